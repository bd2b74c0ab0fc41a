"""Shared helpers for the test suite: random diagrams and an independent
bracket oracle."""

from __future__ import annotations

import itertools
import random

from knotoidlift import planar
from knotoidlift.codes import GaussCode, Passage, canonical
from knotoidlift.laurent import LaurentPolynomial
from knotoidlift.planar import PlanarDiagram

A = LaurentPolynomial.monomial(1, 1)
D = -(A**2) - A ** (-2)

TREFOIL = "1,-2,3,-1,2,-3 / 1,1,1"
TWO_CROSSING = "1,-2,-1,2 / 1,1"
THREE_CROSSING = "-1,1,2,-3,-2,3 / 1,1,1"
# mirror-image pair, shared with the trefoil's normalized bracket
RIGHT_TREFOIL_BRACKET = LaurentPolynomial.parse("A^-4 + A^-12 - A^-16")
LEFT_TREFOIL_BRACKET = LaurentPolynomial.parse("A^4 + A^12 - A^16")


def _edges(d: PlanarDiagram) -> list[int]:
    m = d.map
    return [y for y in range(m.num_darts) if y < m.alpha[y]]


def r2_sites(d: PlanarDiagram) -> list[tuple[int, int]]:
    m = d.map
    sites = []
    for cyc in m.faces:
        ds = [m.sigma(x) for x in cyc]
        for a, b in itertools.combinations(ds, 2):
            if min(a, m.alpha[a]) != min(b, m.alpha[b]):
                sites.append((a, b))
    return sites


def random_move(d: PlanarDiagram, rng: random.Random) -> PlanarDiagram:
    """One random R1 or R2 insertion."""
    if rng.random() < 0.5:
        sites = r2_sites(d)
        if sites:
            a, b = rng.choice(sites)
            return planar.r2_insert(d, a, b, rng.choice(("first", "second")))
    return planar.r1_insert(d, rng.choice(_edges(d)), rng.choice((1, -1)), rng.choice(("left", "right")))


def random_trivial_diagram(rng: random.Random, moves: int = 3, planar_outer: bool = False) -> PlanarDiagram:
    """A diagram of the trivial knotoid: crossingless plus random R-moves.

    With ``planar_outer`` the result gets a random outer face (and so may be
    a nontrivial planar knotoid).
    """
    d = planar.crossingless_knotoid()
    for _ in range(moves):
        d = random_move(d, rng)
    if planar_outer:
        d = d.with_outer_face(rng.randrange(len(d.map.faces)))
    return d


def flip_crossings(code: GaussCode, labels: set[int]) -> GaussCode:
    """Crossing changes at ``labels``; the underlying curve is unchanged."""
    seq = [Passage(p.label, not p.over) if p.label in labels else p for p in code.sequence]
    signs = [-s if k + 1 in labels else s for k, s in enumerate(code.signs)]
    return GaussCode(tuple(seq), tuple(signs), code.kind)


def random_code(rng: random.Random, max_moves: int = 4) -> GaussCode:
    """A valid knotoid code, usually of a nontrivial knotoid: random R-moves
    followed by random crossing changes."""
    d = random_trivial_diagram(rng, rng.randint(0, max_moves))
    code = planar.to_gauss(d)
    flips = {k for k in range(1, code.n + 1) if rng.random() < 0.5}
    return canonical(flip_crossings(code, flips))


def naive_bracket(d: PlanarDiagram) -> LaurentPolynomial:
    """Raw bracket by summing over all states on the rotation system.

    At a crossing with counterclockwise slots (x0, x1, x2, x3) and x0, x2 on
    the over strand, the A-regions are the corners x0|x1 and x2|x3; the
    A-smoothing joins them, pairing x0 with x3 and x1 with x2.
    """
    m = d.map
    crossings = [v for v in m.vertices if v.kind == "crossing"]
    if not m.vertices:
        return LaurentPolynomial.monomial(1, 0)
    total = LaurentPolynomial()
    for state in itertools.product((True, False), repeat=len(crossings)):
        parent = list(range(m.num_darts))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a: int, b: int) -> None:
            parent[find(a)] = find(b)

        for y in range(m.num_darts):
            union(y, m.alpha[y])
        for v, a_smooth in zip(crossings, state):
            x = v.darts
            if x[0] not in v.over:
                x = x[1:] + x[:1]
            if a_smooth:
                union(x[0], x[3])
                union(x[1], x[2])
            else:
                union(x[0], x[1])
                union(x[2], x[3])
        components = len({find(y) for y in range(m.num_darts)})
        a = sum(state)
        total = total + A ** (2 * a - len(crossings)) * D ** (components - 1)
    return total


def naive_normalized(d: PlanarDiagram, writhe: int) -> LaurentPolynomial:
    return naive_bracket(d) * (-(A**3)) ** (-writhe)
