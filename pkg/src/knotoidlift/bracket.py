"""Kauffman bracket state sum for knot and knotoid Gauss codes.

Conventions: the A-smoothing of a crossing is the orientation-respecting
(Seifert) reconnection when the crossing is positive and the other
reconnection when it is negative. Each state contributes
``A**(a-b) * d**loops`` with ``d = -A**2 - A**-2``. For knots ``loops`` is
the number of state circles minus one; for knotoids it is the number of
closed circles, the single open arc contributing nothing. A positive kink
therefore evaluates to ``-A**3`` and the normalised bracket
``raw * (-A**3)**(-writhe)`` is a regular-isotopy-free invariant.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

from .codes import GaussCode, Passage
from .errors import CrossingLimitExceeded, InvalidCode
from .laurent import A, LaurentPolynomial, ONE

__all__ = [
    "DEFAULT_MAX_CROSSINGS",
    "LOOP_VALUE",
    "BracketValue",
    "Certificate",
    "bracket",
    "normalized_bracket",
    "state_loops",
    "state_pairings",
    "nontriviality_certificate",
]

DEFAULT_MAX_CROSSINGS = 24
LOOP_VALUE = -(A**2) - A ** (-2)


@dataclass(frozen=True)
class BracketValue:
    raw: LaurentPolynomial
    writhe: int
    normalized: LaurentPolynomial


class Certificate(enum.Enum):
    NONTRIVIAL = "Nontrivial"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


def _arc_pairs(code: GaussCode) -> tuple[list[tuple[int, int]], int]:
    """Arcs of the curve as pairs of end ids.

    Passage ``i`` owns the ends ``2i`` (arriving) and ``2i+1`` (leaving).
    Knotoids get two extra ends for the tail and head.
    """
    L = len(code.sequence)
    if code.kind == "knot":
        return [(2 * i + 1, 2 * ((i + 1) % L)) for i in range(L)], 2 * L
    tail, head = 2 * L, 2 * L + 1
    if L == 0:
        return [(tail, head)], 2 * L + 2
    pairs = [(tail, 0)] + [(2 * i + 1, 2 * i + 2) for i in range(L - 1)] + [(2 * L - 1, head)]
    return pairs, 2 * L + 2


def _crossing_positions(code: GaussCode) -> list[tuple[int, int, int]]:
    """(over position, under position, sign) for labels 1..n."""
    over: dict[int, int] = {}
    under: dict[int, int] = {}
    for i, p in enumerate(code.sequence):
        (over if p.over else under)[p.label] = i
    return [(over[k], under[k], code.signs[k - 1]) for k in range(1, code.n + 1)]


def state_pairings(p: int, q: int, sign: int) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]:
    """End pairings of the A- and B-smoothings of a crossing whose over
    passage sits at position ``p`` and under passage at ``q``."""
    oriented = ((2 * p, 2 * q + 1), (2 * q, 2 * p + 1))
    unoriented = ((2 * p, 2 * q), (2 * p + 1, 2 * q + 1))
    return (oriented, unoriented) if sign > 0 else (unoriented, oriented)


def _validated(code: GaussCode, max_crossings: int | None) -> GaussCode:
    if not isinstance(code, GaussCode):
        raise InvalidCode(f"expected a Gauss code, got {type(code).__name__}")
    if any(not isinstance(e, Passage) for e in code.sequence):
        code = GaussCode(code.passages, code.signs, code.kind)
    limit = DEFAULT_MAX_CROSSINGS if max_crossings is None else max_crossings
    if code.n > limit:
        raise CrossingLimitExceeded(f"{code.n} crossings exceeds the limit of {limit}")
    return code


def state_loops(code: GaussCode, state: Sequence[bool]) -> int:
    """Number of closed circles in the state choosing the A-smoothing at
    crossing ``k`` iff ``state[k-1]`` is true (open arcs not counted)."""
    code = _validated(code, None if len(state) <= DEFAULT_MAX_CROSSINGS else len(state))
    if len(state) != code.n:
        raise ValueError("state length must equal the number of crossings")
    arcs, size = _arc_pairs(code)
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = list(arcs)
    for (p, q, sign), use_a in zip(_crossing_positions(code), state):
        a_pairs, b_pairs = state_pairings(p, q, sign)
        edges.extend(a_pairs if use_a else b_pairs)
    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    components = len({find(x) for x in range(size)})
    return components - 1 if code.kind == "knotoid" else components


def _state_sum(code: GaussCode) -> LaurentPolynomial:
    """Frontier contraction over crossings in label order.

    A partial state is the perfect matching that the processed smoothings
    induce on the still-unprocessed ends; states with equal matchings are
    merged. Values are tallied as {(a - b, closed loops): count}.
    """
    arcs, size = _arc_pairs(code)
    partner = [-1] * size
    for x, y in arcs:
        partner[x] = y
        partner[y] = x
    states: dict[tuple[int, ...], dict[tuple[int, int], int]] = {tuple(partner): {(0, 0): 1}}
    for p, q, sign in _crossing_positions(code):
        a_pairs, b_pairs = state_pairings(p, q, sign)
        nxt: dict[tuple[int, ...], dict[tuple[int, int], int]] = {}
        for match, tally in states.items():
            for pairs, step in ((a_pairs, 1), (b_pairs, -1)):
                m = list(match)
                closed = 0
                for x, y in pairs:
                    px, py = m[x], m[y]
                    if px == y:
                        closed += 1
                    else:
                        m[px] = py
                        m[py] = px
                    m[x] = m[y] = -1
                key = tuple(m)
                bucket = nxt.setdefault(key, {})
                for (ab, loops), count in tally.items():
                    k = (ab + step, loops + closed)
                    bucket[k] = bucket.get(k, 0) + count
        states = nxt
    total: dict[tuple[int, int], int] = {}
    for tally in states.values():
        for k, c in tally.items():
            total[k] = total.get(k, 0) + c
    offset = 1 if code.kind == "knot" else 0
    max_loops = max((loops for _, loops in total), default=0)
    powers = [ONE]
    for _ in range(max_loops):
        powers.append(powers[-1] * LOOP_VALUE)
    result = LaurentPolynomial()
    for (ab, loops), count in total.items():
        result = result + (powers[loops - offset] * count).shift(ab)
    return result


def bracket(code: GaussCode, *, max_crossings: int | None = None) -> BracketValue:
    """Kauffman bracket of a (realisable) knot or knotoid Gauss code.

    Cut entries of generalised codes are ignored. Raises
    ``CrossingLimitExceeded`` above ``max_crossings`` (default 24).
    """
    code = _validated(code, max_crossings)
    if code.n == 0:
        return BracketValue(ONE, 0, ONE)
    raw = _state_sum(code)
    w = code.writhe
    normalized = raw * (-(A**3)) ** (-w)
    return BracketValue(raw, w, normalized)


def normalized_bracket(code: GaussCode, *, max_crossings: int | None = None) -> LaurentPolynomial:
    return bracket(code, max_crossings=max_crossings).normalized


def nontriviality_certificate(code: GaussCode, *, max_crossings: int | None = None) -> Certificate:
    """One-sided test: a normalised bracket different from 1 certifies that
    the knot is not the unknot. Never claims triviality."""
    if code.kind != "knot":
        raise InvalidCode("nontriviality certificates are issued for knot codes")
    if normalized_bracket(code, max_crossings=max_crossings) != ONE:
        return Certificate.NONTRIVIAL
    return Certificate.INCONCLUSIVE
