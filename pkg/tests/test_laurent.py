from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotoidlift.laurent import ONE, ZERO, A, LaurentPolynomial

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6).map(LaurentPolynomial)


def test_zero_coefficients_are_dropped():
    assert LaurentPolynomial({3: 0, -1: 2}).terms == {-1: 2}
    assert LaurentPolynomial({2: 1}) - LaurentPolynomial({2: 1}) == ZERO
    assert ZERO.is_zero() and not ONE.is_zero()


def test_str_is_descending_and_parse_inverts_it():
    p = LaurentPolynomial({-16: -1, -4: 1, -12: 1})
    assert str(p) == "1*A^-4 + 1*A^-12 + -1*A^-16"
    assert LaurentPolynomial.parse(str(p)) == p
    assert LaurentPolynomial.parse("A^4 + A^12 - A^16") == LaurentPolynomial({4: 1, 12: 1, 16: -1})
    assert str(ZERO) == "0" and LaurentPolynomial.parse("0") == ZERO


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        LaurentPolynomial.parse("A^x")


def test_loop_value_squared():
    d = -(A**2) - A ** (-2)
    assert d * d == LaurentPolynomial({4: 1, 0: 2, -4: 1})


def test_negative_power_of_monomial():
    assert (-(A**3)) ** -2 == A ** (-6)
    with pytest.raises(ValueError):
        (A + 1) ** -1


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys, polys)
def test_substitution_is_a_ring_map(p, q):
    assert (p * q).substitute_inverse() == p.substitute_inverse() * q.substitute_inverse()
    assert p.substitute_inverse().substitute_inverse() == p


@given(polys)
def test_json_round_trip(p):
    assert LaurentPolynomial.from_json(p.to_json()) == p
    assert hash(LaurentPolynomial.parse(str(p))) == hash(p)
