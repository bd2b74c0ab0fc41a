"""Lifting knotoids to knots through the double branched cover.

Two independent routes are provided. ``lift_code`` works on generalised
Gauss codes alone: the curve is walked once, switching sheets at every cut
entry, and the return trip along the other sheet is appended. The doubling
route builds the branched double cover of the cut diagram as an explicit
rotation system (``double_diagram``) and reads the lifted knot off the map;
it also carries the annular structure needed for winding numbers and
twisted re-embeddings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .codes import CutEntry, GaussCode, GeneralizedGaussCode, Passage, canonical, canonical_knot_code
from .errors import InvalidCode, MalformedDiagram
from .planar import AugmentedMap, CutSystem, MapVertex, PlanarDiagram, RotationMap, auto_cut_system, validate_cut_system

__all__ = [
    "lift_code",
    "AnnularDiagram",
    "RadialCrossing",
    "double_diagram",
    "annular_to_code",
    "winding",
    "twist_embed",
]


def lift_code(g: GaussCode) -> GaussCode:
    """Gauss code of the lifted knot, computed from a generalised code.

    Labels ``l`` and ``l + n`` are the two lifts of crossing ``l``. A
    crossing keeps its sign in both lifts when an even number of cut
    entries separates its two occurrences, and flips it otherwise.
    """
    if not isinstance(g, GaussCode):
        raise InvalidCode(f"expected a generalised Gauss code, got {type(g).__name__}")
    if g.kind != "knotoid":
        raise InvalidCode("only knotoid codes can be lifted")
    n = g.n
    parity = 0
    first: list[Passage] = []
    cuts_before: dict[int, list[int]] = {}
    for e in g.sequence:
        if isinstance(e, CutEntry):
            parity ^= 1
            continue
        cuts_before.setdefault(e.label, []).append(parity)
        first.append(Passage(e.label + n * parity, e.over))
    second = [Passage(p.label - n if p.label > n else p.label + n, p.over) for p in reversed(first)]
    signs = []
    for k in range(1, n + 1):
        a, b = cuts_before[k]
        signs.append(g.signs[k - 1] if a == b else -g.signs[k - 1])
    return GaussCode(tuple(first + second), tuple(signs + signs), "knot")


# -- doubling -----------------------------------------------------------------


@dataclass(frozen=True)
class RadialCrossing:
    """A point where the lifted curve meets the radial reference arc."""

    ordinal: int  # 1-based position along the arc
    direction: int  # +1 when the curve crosses the arc from its right to its left
    vertex: int  # vertex of the lifted map


@dataclass(frozen=True)
class _Step:
    """One vertex visit of the lifted curve: a crossing passage or a radial
    crossing."""

    vertex: int
    in_dart: int
    crossing: bool


class AnnularDiagram:
    """Branched double cover of a cut knotoid diagram.

    The lifted map is a sphere map whose two lifts of the reference point
    (``inf``) are removed to form an annulus. ``radial_ref`` is the lift of
    the tail cut, oriented from one lift of ``inf`` through the lift of the
    tail to the other.
    """

    def __init__(self, dmap: RotationMap, steps: tuple[_Step, ...], radial_ref: tuple[RadialCrossing, ...], infinities: tuple[int, int]):
        self.map = dmap
        self.steps = steps
        self.radial_ref = radial_ref
        self.infinities = infinities

    def __repr__(self) -> str:
        n = sum(1 for v in self.map.vertices if v.kind == "crossing")
        return f"<AnnularDiagram crossings={n} radial={len(self.radial_ref)}>"

    def deck(self, dart: int) -> int:
        """Deck involution: swap the two sheets."""
        return dart ^ 1

    def deck_fixed_vertices(self) -> list[int]:
        m = self.map
        return [vi for vi, v in enumerate(m.vertices) if m.vertex_of[self.deck(v.darts[0])] == vi]

    def to_json(self) -> dict[str, Any]:
        m = self.map
        verts = []
        for v in m.vertices:
            item: dict[str, Any] = {"id": v.id, "kind": v.kind, "rotation": [_dart_name(d) for d in v.darts]}
            if v.kind == "crossing":
                item["over_slots"] = [_dart_name(d) for d in v.darts if d in v.over]
            verts.append(item)
        edges = [[_dart_name(d), _dart_name(m.alpha[d])] for d in range(m.num_darts) if d < m.alpha[d]]
        return {
            "vertices": verts,
            "edges": edges,
            "radial_ref": [{"direction": r.direction, "ordinal": r.ordinal} for r in self.radial_ref],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _dart_name(d: int) -> str:
    return f"d{d >> 1}.{d & 1}"


def _lift_map(aug: AugmentedMap) -> RotationMap:
    """Voltage lift: lifted dart ``2*d + s`` is dart ``d`` on sheet ``s``.

    Rotating past a cut dart or running along a cut edge changes sheet, so
    each cut is a seam gluing the sheets crosswise.
    """
    m = aug.map
    cut = aug.cut_darts

    def sigma(x: int) -> int:
        d, s = x >> 1, x & 1
        return 2 * m.sigma(d) + (s ^ (d in cut))

    def alpha(x: int) -> int:
        d, s = x >> 1, x & 1
        return 2 * m.alpha[d] + (s ^ (d in cut))

    assigned = [False] * (2 * m.num_darts)
    vertices = []
    for vi, v in enumerate(m.vertices):
        for s in (0, 1):
            start = 2 * v.darts[0] + s
            if assigned[start]:
                continue
            orbit = []
            x = start
            while not assigned[x]:
                assigned[x] = True
                orbit.append(x)
                x = sigma(x)
            if vi in (aug.tail_vertex, aug.head_vertex):
                kind, vid = "branch", f"{v.id}~"
            else:
                kind, vid = v.kind, f"{v.id}.{s}"
            over = frozenset(2 * d + t for d in v.over for t in (0, 1)) & frozenset(orbit)
            vertices.append(MapVertex(vid, kind, tuple(orbit), over))
    return RotationMap(vertices, [alpha(x) for x in range(2 * m.num_darts)])


def double_diagram(d: PlanarDiagram, cuts: CutSystem | None = None) -> AnnularDiagram:
    """Glue two copies of the cut diagram crosswise along the cuts."""
    if d.kind != "knotoid":
        raise MalformedDiagram("only knotoid diagrams have a branched double cover")
    if cuts is None:
        cuts = auto_cut_system(d)
    aug = validate_cut_system(d, cuts)
    lm = _lift_map(aug)
    if lm.euler_characteristic() != 2:
        raise MalformedDiagram("branched double cover is not a sphere")
    am = aug.map

    # the lifted curve starts at the lifted tail, leaving on sheet 0
    stem = am.vertices[aug.tail_vertex].darts[0]
    start = 2 * stem
    steps: list[_Step] = []
    visits: dict[int, int] = {}  # vertex -> arriving dart, for radial points
    x = start
    for _ in range(lm.num_darts):
        a = lm.alpha[x]
        vi = lm.vertex_of[a]
        kind = lm.vertices[vi].kind
        if kind == "crossing":
            steps.append(_Step(vi, a, True))
        elif kind in ("cut", "branch"):
            visits[vi] = a
            steps.append(_Step(vi, a, False))
        x = lm.opposite(a)
        if x == start:
            break
    else:
        raise MalformedDiagram("lifted curve does not close up")

    # the radial reference arc: lift of the tail cut, sheet 0 half reversed
    branch = lm.vertex_of[start]
    cut0 = am.vertices[aug.tail_vertex].darts[1]
    halves = []
    ends = []
    for s in (0, 1):
        half = []
        y = 2 * cut0 + s
        while True:
            a = lm.alpha[y]
            vi = lm.vertex_of[a]
            if lm.vertices[vi].kind == "infinity":
                ends.append(vi)
                break
            half.append((vi, a))
            y = lm.opposite(a)
        halves.append(half)
    radial_path = [(vi, lm.opposite(a)) for vi, a in reversed(halves[0])]
    radial_path.append((branch, 2 * cut0))
    radial_path.extend(halves[1])
    radial = []
    for ordinal, (vi, r_in) in enumerate(radial_path, start=1):
        k_in = visits.get(vi)
        if k_in is None:
            raise MalformedDiagram("lifted curve misses a point of the radial arc")
        direction = lm.crossing_sign(r_in, k_in)
        radial.append(RadialCrossing(ordinal, direction, vi))
    # keep only radial points in the step list
    radial_vertices = {r.vertex for r in radial}
    steps = [s for s in steps if s.crossing or s.vertex in radial_vertices]
    return AnnularDiagram(lm, tuple(steps), tuple(radial), (ends[0], ends[1]))


def _crossing_code(a: AnnularDiagram) -> tuple[list[Passage | tuple[str, int]], dict[int, int], list[int]]:
    """Passages of the lifted curve with radial markers ``("r", ordinal)``."""
    m = a.map
    labels: dict[int, int] = {}
    ins: dict[int, dict[bool, int]] = {}
    ordinal = {r.vertex: r.ordinal for r in a.radial_ref}
    seq: list[Passage | tuple[str, int]] = []
    for st in a.steps:
        if st.crossing:
            v = m.vertices[st.vertex]
            over = st.in_dart in v.over
            labels.setdefault(st.vertex, len(labels) + 1)
            ins.setdefault(st.vertex, {})[over] = st.in_dart
            seq.append(Passage(labels[st.vertex], over))
        else:
            seq.append(("r", ordinal[st.vertex]))
    signs = [0] * len(labels)
    for v, lab in labels.items():
        signs[lab - 1] = m.crossing_sign(ins[v][True], ins[v][False])
    return seq, labels, signs


def annular_to_code(a: AnnularDiagram) -> GaussCode:
    """Canonical knot code of the lifted curve, forgetting the annulus."""
    seq, _, signs = _crossing_code(a)
    passages = tuple(p for p in seq if isinstance(p, Passage))
    return canonical_knot_code(GaussCode(passages, tuple(signs), "knot"))


def winding(a: AnnularDiagram) -> int:
    """Signed number of times the lifted curve crosses the radial arc;
    always odd."""
    return sum(r.direction for r in a.radial_ref)


def _full_twist(m: int, t: int) -> list[tuple[int, int, int]]:
    """Crossings of ``t`` full twists on ``m`` parallel strands, as
    (over strand, under strand, braid sign) in braid order.

    Strands are numbered by their starting position; the generator between
    positions ``i`` and ``i + 1`` puts the lower position over for positive
    twists and under for negative ones.
    """
    sign = 1 if t > 0 else -1
    at = list(range(m))
    out = []
    for _ in range(abs(t) * m):
        for i in range(m - 1):
            lo, hi = at[i], at[i + 1]
            out.append((lo, hi, sign) if sign > 0 else (hi, lo, sign))
            at[i], at[i + 1] = hi, lo
    return out


def twist_embed(a: AnnularDiagram, t: int) -> GaussCode:
    """Knot code after re-embedding the solid torus with ``t`` full twists.

    The strands crossing the radial arc pass through a full-twist braid
    box placed beside it; a strand crossing the arc backwards traverses the
    box backwards. ``t = 0`` gives ``annular_to_code(a)``.
    """
    seq, labels, signs = _crossing_code(a)
    m = len(a.radial_ref)
    if t == 0 or m < 2:
        return annular_to_code(a)
    eps = {r.ordinal - 1: r.direction for r in a.radial_ref}
    braid = _full_twist(m, t)
    base = len(labels)
    # strand -> its passages through the box in braid order
    through: dict[int, list[Passage]] = {i: [] for i in range(m)}
    new_signs = []
    for j, (over, under, sign) in enumerate(braid):
        label = base + j + 1
        through[over].append(Passage(label, True))
        through[under].append(Passage(label, False))
        new_signs.append(sign * eps[over] * eps[under])
    out: list[Passage] = []
    for item in seq:
        if isinstance(item, Passage):
            out.append(item)
        else:
            strand = item[1] - 1
            ps = through[strand]
            out.extend(ps if eps[strand] > 0 else reversed(ps))
    code = GaussCode(tuple(out), tuple(signs + new_signs), "knot")
    return canonical_knot_code(canonical(code))
