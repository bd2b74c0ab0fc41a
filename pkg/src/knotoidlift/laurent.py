"""Exact Laurent polynomials in a single variable ``A`` with integer coefficients."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from typing import Union

__all__ = [
    "LaurentPolynomial",
    "A",
    "ONE",
    "ZERO",
    "poly_add",
    "poly_mul",
    "poly_substitute_inverse",
]

_Coercible = Union["LaurentPolynomial", int]


class LaurentPolynomial:
    """Sparse polynomial ``sum c_e * A**e`` with ``e`` ranging over the integers.

    Zero coefficients are never stored, so the zero polynomial is the empty
    mapping and equality is plain dictionary equality. Instances are
    immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, coeff in items:
                if not isinstance(exp, int) or not isinstance(coeff, int):
                    raise TypeError("exponents and coefficients must be integers")
                acc[exp] = acc.get(exp, 0) + coeff
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash: int | None = None

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> LaurentPolynomial:
        return cls({exp: coeff})

    @classmethod
    def _coerce(cls, value: _Coercible) -> LaurentPolynomial:
        if isinstance(value, LaurentPolynomial):
            return value
        if isinstance(value, int):
            return cls({0: value})
        return NotImplemented

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the exponent -> coefficient mapping."""
        return dict(self._terms)

    def items(self) -> list[tuple[int, int]]:
        """Terms sorted by descending exponent."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def max_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    @property
    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: _Coercible) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: _Coercible) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: _Coercible) -> LaurentPolynomial:
        return (-self) + other

    def __mul__(self, other: _Coercible) -> LaurentPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPolynomial:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPolynomial({-e * -n: c ** -n})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by ``A**k``."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def substitute_inverse(self) -> LaurentPolynomial:
        """Return ``p(A**-1)``."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            parts.append(str(c) if e == 0 else f"{c}*A^{e}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPolynomial:
        return cls({int(e): int(c) for e, c in data.items()})

    @classmethod
    def parse(cls, text: str) -> LaurentPolynomial:
        """Inverse of ``str``; also tolerates ``A``, ``-A^2`` and ``-`` separators."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        s = re.sub(r"(?<=[0-9A])-", "+-", s)
        acc: dict[int, int] = {}
        for tok in s.split("+"):
            if not tok:
                continue
            m = re.fullmatch(r"(-?\d*)\*?(A(?:\^(-?\d+))?)?", tok)
            if not m or (not m.group(1) and not m.group(2)) or m.group(1) == "-" and not m.group(2):
                raise ValueError(f"cannot parse polynomial term {tok!r}")
            coeff_txt, var, exp_txt = m.groups()
            coeff = -1 if coeff_txt == "-" else int(coeff_txt) if coeff_txt else 1
            exp = 0 if not var else int(exp_txt) if exp_txt else 1
            acc[exp] = acc.get(exp, 0) + coeff
        return cls(acc)


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial({0: 1})
A = LaurentPolynomial({1: 1})


def poly_add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p + q


def poly_mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p * q


def poly_substitute_inverse(p: LaurentPolynomial) -> LaurentPolynomial:
    return p.substitute_inverse()
