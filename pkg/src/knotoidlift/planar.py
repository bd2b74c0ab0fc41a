"""Knot and knotoid diagrams as combinatorial planar maps.

A diagram is a rotation system: every vertex lists its half-edges (slots)
in counterclockwise order and every edge pairs two slots. Crossings have
four slots, the two slots of the over strand being opposite; the endpoints
of a knotoid (tail and head) have one slot each. A diagram without a marked
outer face lives on the sphere; marking an outer face makes it planar and
pins the reference face used by branch cuts.

Internally slots are numbered darts ``0..2E-1``. ``alpha`` pairs the two
darts of an edge and ``sigma`` steps counterclockwise around a vertex. The
corner of dart ``x`` is the sector swept counterclockwise from ``x`` to
``sigma(x)``; faces are the orbits of ``x -> alpha(sigma(x))`` on corners.
Crossing a dart ``y`` of the dual graph means walking from the face on the
right of ``y`` to the face on its left.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from .codes import CutEntry, GaussCode, GeneralizedGaussCode, Passage, canonical, canonical_knot_code
from .errors import (
    BadDegree,
    Disconnected,
    EulerViolation,
    InvalidCode,
    InvalidCutSystem,
    InvalidSite,
    MalformedDiagram,
    NoOuterFace,
    NotSingleStrand,
)

__all__ = [
    "MapVertex",
    "RotationMap",
    "PlanarDiagram",
    "CutSystem",
    "build_diagram",
    "diagram_from_json",
    "diagram_from_code",
    "faces",
    "to_gauss",
    "to_ggc",
    "auto_cut_system",
    "enumerate_cut_systems",
    "close_under",
    "close_over",
    "alpha_cut",
    "product_diagram",
    "r1_insert",
    "r2_insert",
    "crossingless_knotoid",
    "unknot_diagram",
]


@dataclass(frozen=True)
class MapVertex:
    id: str
    kind: str
    darts: tuple[int, ...]
    over: frozenset[int] = frozenset()


class RotationMap:
    """Immutable rotation system over darts ``0..len(alpha)-1``."""

    def __init__(self, vertices: Sequence[MapVertex], alpha: Sequence[int]):
        self.vertices = tuple(vertices)
        self.alpha = tuple(alpha)
        n = len(self.alpha)
        vertex_of = [-1] * n
        position = [-1] * n
        for vi, v in enumerate(self.vertices):
            for pos, d in enumerate(v.darts):
                vertex_of[d] = vi
                position[d] = pos
        self.vertex_of = tuple(vertex_of)
        self.position = tuple(position)

    @property
    def num_darts(self) -> int:
        return len(self.alpha)

    @property
    def num_edges(self) -> int:
        return len(self.alpha) // 2

    def sigma(self, d: int) -> int:
        v = self.vertices[self.vertex_of[d]]
        return v.darts[(self.position[d] + 1) % len(v.darts)]

    def sigma_inv(self, d: int) -> int:
        v = self.vertices[self.vertex_of[d]]
        return v.darts[(self.position[d] - 1) % len(v.darts)]

    def opposite(self, d: int) -> int:
        """Dart across a 4-valent vertex (where a strand continues)."""
        v = self.vertices[self.vertex_of[d]]
        if len(v.darts) != 4:
            raise ValueError("opposite dart is defined at 4-valent vertices only")
        return v.darts[(self.position[d] + 2) % 4]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face boundary cycles as sequences of corner darts, ordered by
        smallest dart."""
        seen = [False] * self.num_darts
        out = []
        for start in range(self.num_darts):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.alpha[self.sigma(x)]
            out.append(tuple(cycle))
        return tuple(out)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        """Face index of the corner of each dart."""
        f = [0] * self.num_darts
        for fi, cyc in enumerate(self.faces):
            for x in cyc:
                f[x] = fi
        return tuple(f)

    @cached_property
    def corner_index(self) -> tuple[int, ...]:
        idx = [0] * self.num_darts
        for cyc in self.faces:
            for i, x in enumerate(cyc):
                idx[x] = i
        return tuple(idx)

    def right_face(self, d: int) -> int:
        """Face on the right of dart ``d`` pointing away from its vertex."""
        return self.face_of[self.sigma_inv(d)]

    def euler_characteristic(self) -> int:
        return len(self.vertices) - self.num_edges + len(self.faces)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        stack = [0]
        while stack:
            vi = stack.pop()
            for d in self.vertices[vi].darts:
                w = self.vertex_of[self.alpha[d]]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def crossing_sign(self, over_in: int, under_in: int) -> int:
        """Sign of a crossing given the darts through which the over and the
        under strand arrive: positive iff the under strand arrives one slot
        counterclockwise of the over strand."""
        return 1 if self.position[under_in] == (self.position[over_in] + 1) % 4 else -1


# -- diagrams -----------------------------------------------------------------


@dataclass(frozen=True)
class Passing:
    """One passage of the strand through a crossing vertex."""

    vertex: int
    in_dart: int
    out_dart: int
    over: bool


class PlanarDiagram:
    """Validated knot or knotoid diagram. Construct with ``build_diagram``."""

    def __init__(self, dmap: RotationMap, names: Sequence[str], kind: str, outer_face: int | None):
        self.map = dmap
        self.names = tuple(names)
        self.kind = kind
        self.outer_face = outer_face
        self._dart_of_name = {nm: i for i, nm in enumerate(self.names)}

    def __repr__(self) -> str:
        n = sum(1 for v in self.map.vertices if v.kind == "crossing")
        where = "planar" if self.outer_face is not None else "spherical"
        return f"<PlanarDiagram {self.kind} {where} crossings={n}>"

    @property
    def crossings(self) -> list[int]:
        return [i for i, v in enumerate(self.map.vertices) if v.kind == "crossing"]

    @property
    def is_planar(self) -> bool:
        return self.outer_face is not None

    def dart(self, slot: Any) -> int:
        try:
            return self._dart_of_name[str(slot)]
        except KeyError:
            raise InvalidSite(f"unknown slot {slot!r}") from None

    def _endpoint_dart(self, kind: str) -> int:
        for v in self.map.vertices:
            if v.kind == kind:
                return v.darts[0]
        raise InvalidSite(f"diagram has no {kind}")

    @property
    def tail_dart(self) -> int:
        return self._endpoint_dart("tail")

    @property
    def head_dart(self) -> int:
        return self._endpoint_dart("head")

    @property
    def tail_face(self) -> int:
        return self.map.face_of[self.tail_dart]

    @property
    def head_face(self) -> int:
        return self.map.face_of[self.head_dart]

    def with_outer_face(self, face: int | None) -> PlanarDiagram:
        if face is not None and not 0 <= face < len(self.map.faces):
            raise InvalidSite(f"no face {face}")
        return PlanarDiagram(self.map, self.names, self.kind, face)

    @cached_property
    def strand(self) -> tuple[tuple[int, ...], tuple[Passing, ...]]:
        """Darts leaving each vertex along the curve, and the crossing passages.

        Knotoids are walked from the tail. Knots are walked starting with the
        first slot of the first crossing, which fixes their orientation.
        """
        m = self.map
        if not m.vertices:
            return (), ()
        if self.kind == "knotoid":
            start = self.tail_dart
        else:
            start = m.vertices[0].darts[0]
        darts = []
        passings = []
        d = start
        for _ in range(m.num_darts):
            darts.append(d)
            arrive = m.alpha[d]
            v = m.vertices[m.vertex_of[arrive]]
            if v.kind != "crossing":
                break
            out = m.opposite(arrive)
            passings.append(Passing(m.vertex_of[arrive], arrive, out, arrive in v.over))
            d = out
            if d == start:
                break
        return tuple(darts), tuple(passings)

    def to_json(self) -> dict[str, Any]:
        m = self.map
        verts = []
        for v in m.vertices:
            item: dict[str, Any] = {"id": v.id, "kind": v.kind, "rotation": [self.names[d] for d in v.darts]}
            if v.kind == "crossing":
                item["over_slots"] = [self.names[d] for d in v.darts if d in v.over]
            verts.append(item)
        edges = [[self.names[d], self.names[m.alpha[d]]] for d in range(m.num_darts) if d < m.alpha[d]]
        out: dict[str, Any] = {"vertices": verts, "edges": edges}
        if self.outer_face is not None:
            out["outer_face"] = self.outer_face
        return out

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _validate(dmap: RotationMap, kind: str, outer_face: int | None) -> None:
    if not dmap.is_connected():
        raise Disconnected("diagram graph is not connected")
    if dmap.vertices and dmap.euler_characteristic() != 2:
        raise EulerViolation(
            f"V - E + F = {dmap.euler_characteristic()}; the rotation system is not a sphere map"
        )
    if outer_face is not None and not (isinstance(outer_face, int) and 0 <= outer_face < max(1, len(dmap.faces))):
        raise MalformedDiagram(f"outer face {outer_face!r} does not exist")


def _canonical_numbering(dmap: RotationMap, names: Sequence[str]) -> tuple[RotationMap, list[str], list[int]]:
    """Renumber darts in the order they appear in the vertex rotations.

    This is the order ``to_json`` writes slots in, so face ids survive a
    JSON round trip.
    """
    order = [d for v in dmap.vertices for d in v.darts]
    new = [0] * dmap.num_darts
    for i, d in enumerate(order):
        new[d] = i
    vertices = [MapVertex(v.id, v.kind, tuple(new[d] for d in v.darts), frozenset(new[d] for d in v.over)) for v in dmap.vertices]
    alpha = [new[dmap.alpha[d]] for d in order]
    return RotationMap(vertices, alpha), [names[d] for d in order], new


def _finish(dmap: RotationMap, names: Sequence[str], kind: str, outer_face: int | None) -> PlanarDiagram:
    """Validate and canonicalise; ``outer_face`` refers to ``dmap``'s faces."""
    _validate(dmap, kind, outer_face)
    corner = dmap.faces[outer_face][0] if outer_face is not None and dmap.faces else None
    dmap, names, new = _canonical_numbering(dmap, names)
    if corner is not None:
        outer_face = dmap.face_of[new[corner]]
    d = PlanarDiagram(dmap, names, kind, outer_face)
    darts, _ = d.strand
    if len(darts) != dmap.num_edges:
        raise NotSingleStrand(
            f"the curve traverses {len(darts)} of {dmap.num_edges} edges; "
            "the diagram is not a single strand"
        )
    if kind == "knotoid" and darts and dmap.alpha[darts[-1]] != d.head_dart:
        raise NotSingleStrand("walking from the tail does not reach the head")
    return d


def build_diagram(spec: Mapping[str, Any] | str) -> PlanarDiagram:
    """Validate a vertex/edge description (dict or JSON text)."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise MalformedDiagram(f"invalid JSON: {exc}") from exc
    try:
        raw_vertices = list(spec.get("vertices", []))
        raw_edges = list(spec.get("edges", []))
    except AttributeError as exc:
        raise MalformedDiagram("diagram spec must be a mapping") from exc
    outer_face = spec.get("outer_face")

    names: list[str] = []
    dart_of: dict[str, int] = {}
    vertices: list[MapVertex] = []
    tails = heads = 0
    seen_ids: set[str] = set()
    for rv in raw_vertices:
        try:
            vid = str(rv["id"])
            vkind = rv["kind"]
            rotation = [str(s) for s in rv["rotation"]]
        except (KeyError, TypeError) as exc:
            raise MalformedDiagram(f"bad vertex entry {rv!r}") from exc
        if vid in seen_ids:
            raise MalformedDiagram(f"duplicate vertex id {vid!r}")
        seen_ids.add(vid)
        darts = []
        for s in rotation:
            if s in dart_of:
                raise MalformedDiagram(f"slot {s!r} is used twice")
            dart_of[s] = len(names)
            names.append(s)
            darts.append(dart_of[s])
        over: frozenset[int] = frozenset()
        if vkind == "crossing":
            if len(darts) != 4:
                raise BadDegree(f"crossing {vid!r} has degree {len(darts)}; expected 4")
            over_slots = [str(s) for s in rv.get("over_slots", [])]
            if len(over_slots) != 2 or any(s not in rotation for s in over_slots):
                raise MalformedDiagram(f"crossing {vid!r} needs two over slots from its rotation")
            i, j = sorted(rotation.index(s) for s in over_slots)
            if j - i != 2:
                raise MalformedDiagram(f"over slots of crossing {vid!r} must be opposite")
            over = frozenset(dart_of[s] for s in over_slots)
        elif vkind in ("tail", "head"):
            if len(darts) != 1:
                raise BadDegree(f"{vkind} {vid!r} has degree {len(darts)}; expected 1")
            tails += vkind == "tail"
            heads += vkind == "head"
        else:
            raise MalformedDiagram(f"unknown vertex kind {vkind!r}")
        vertices.append(MapVertex(vid, vkind, tuple(darts), over))
    if tails != heads or tails > 1:
        raise MalformedDiagram("a knotoid needs exactly one tail and one head; a knot needs none")
    kind = "knotoid" if tails else "knot"

    alpha = [-1] * len(names)
    for e in raw_edges:
        try:
            a, b = (str(s) for s in e)
        except (TypeError, ValueError) as exc:
            raise MalformedDiagram(f"bad edge {e!r}") from exc
        if a not in dart_of or b not in dart_of:
            raise MalformedDiagram(f"edge {e!r} refers to an unknown slot")
        da, db = dart_of[a], dart_of[b]
        if da == db or alpha[da] != -1 or alpha[db] != -1:
            raise MalformedDiagram(f"edge {e!r} reuses a slot")
        alpha[da], alpha[db] = db, da
    if any(x == -1 for x in alpha):
        missing = [names[i] for i, x in enumerate(alpha) if x == -1]
        raise MalformedDiagram(f"slots without an edge: {missing}")
    return _finish(RotationMap(vertices, alpha), names, kind, outer_face)


def diagram_from_json(text: str) -> PlanarDiagram:
    return build_diagram(text)


def diagram_from_code(code: GaussCode, outer_face: int | None = None) -> PlanarDiagram:
    """Realise a signed Gauss code as a sphere map.

    The crossing signs fix the counterclockwise order at each crossing
    (over-in, under-in, over-out, under-out for a positive crossing), so the
    map is determined by the code. Raises ``EulerViolation`` if the code is
    not planar.
    """
    code = GaussCode(code.passages, code.signs, code.kind)
    L = len(code.sequence)
    if code.kind == "knot" and L == 0:
        return unknot_diagram()
    names: list[str] = []

    def new(name: str) -> int:
        names.append(name)
        return len(names) - 1

    ins = [new(f"p{i}i") for i in range(L)]
    outs = [new(f"p{i}o") for i in range(L)]
    vertices = []
    pos_over: dict[int, int] = {}
    pos_under: dict[int, int] = {}
    for i, p in enumerate(code.sequence):
        (pos_over if p.over else pos_under)[p.label] = i
    for k in range(1, code.n + 1):
        o, u = pos_over[k], pos_under[k]
        if code.signs[k - 1] > 0:
            rot = (ins[o], ins[u], outs[o], outs[u])
        else:
            rot = (ins[o], outs[u], outs[o], ins[u])
        vertices.append(MapVertex(f"c{k}", "crossing", rot, frozenset((ins[o], outs[o]))))
    alpha = [-1] * (2 * L)
    pairs = []
    if code.kind == "knot":
        pairs = [(outs[i], ins[(i + 1) % L]) for i in range(L)]
    else:
        t = new("tail")
        h = new("head")
        alpha.extend([-1, -1])
        vertices.insert(0, MapVertex("t", "tail", (t,)))
        vertices.insert(1, MapVertex("h", "head", (h,)))
        if L == 0:
            pairs = [(t, h)]
        else:
            pairs = [(t, ins[0])] + [(outs[i], ins[i + 1]) for i in range(L - 1)] + [(outs[L - 1], h)]
    for a, b in pairs:
        alpha[a], alpha[b] = b, a
    # knot orientation convention: first slot of the first vertex is outgoing
    if code.kind == "knot":
        vertices = [vertices[0].__class__(v.id, v.kind, _rotate_to_out(v, set(outs)), v.over) for v in vertices]
    d = _finish(RotationMap(vertices, alpha), names, code.kind, None)
    return d if outer_face is None else d.with_outer_face(outer_face)


def _rotate_to_out(v: MapVertex, outs: set[int]) -> tuple[int, ...]:
    for i, d in enumerate(v.darts):
        if d in outs:
            return v.darts[i:] + v.darts[:i]
    return v.darts


def crossingless_knotoid() -> PlanarDiagram:
    return build_diagram(
        {"vertices": [{"id": "t", "kind": "tail", "rotation": ["t"]}, {"id": "h", "kind": "head", "rotation": ["h"]}],
         "edges": [["t", "h"]]}
    )


def unknot_diagram() -> PlanarDiagram:
    """The crossingless knot diagram (a circle, no vertices)."""
    return PlanarDiagram(RotationMap([], []), [], "knot", None)


def faces(d: PlanarDiagram) -> list[tuple[str, ...]]:
    """Face boundary cycles, each as the slot names of its corners."""
    if not d.map.vertices:
        return [(), ()]
    return [tuple(d.names[x] for x in cyc) for cyc in d.map.faces]


def to_gauss(d: PlanarDiagram) -> GaussCode:
    """Signed Gauss code read along the curve.

    Knotoid codes start at the tail. Knot codes are returned in canonical
    basepoint form.
    """
    _, passings = d.strand
    m = d.map
    labels: dict[int, int] = {}
    seq = []
    in_darts: dict[int, dict[bool, int]] = {}
    for p in passings:
        labels.setdefault(p.vertex, len(labels) + 1)
        seq.append(Passage(labels[p.vertex], p.over))
        in_darts.setdefault(p.vertex, {})[p.over] = p.in_dart
    signs = [0] * len(labels)
    for v, lab in labels.items():
        signs[lab - 1] = m.crossing_sign(in_darts[v][True], in_darts[v][False])
    code = GaussCode(tuple(seq), tuple(signs), d.kind)
    return canonical_knot_code(code) if d.kind == "knot" else canonical(code)


# -- branch cuts --------------------------------------------------------------


@dataclass(frozen=True)
class CutSystem:
    """Two dual paths from the faces of the tail and head to a reference face.

    Each path is the sequence of darts it crosses; crossing dart ``y`` goes
    from the face on the right of ``y`` to the face on its left.
    """

    tail_path: tuple[int, ...]
    head_path: tuple[int, ...]
    reference_face: int

    def to_json(self, d: PlanarDiagram) -> dict[str, Any]:
        return {
            "tail_path": [d.names[y] for y in self.tail_path],
            "head_path": [d.names[y] for y in self.head_path],
            "reference_face": self.reference_face,
        }

    @classmethod
    def from_json(cls, d: PlanarDiagram, data: Mapping[str, Any]) -> CutSystem:
        try:
            return cls(
                tuple(d.dart(s) for s in data["tail_path"]),
                tuple(d.dart(s) for s in data["head_path"]),
                int(data["reference_face"]),
            )
        except (KeyError, TypeError, ValueError, InvalidSite) as exc:
            raise InvalidCutSystem(f"bad cut system: {exc}") from exc


def _edge_id(m: RotationMap, y: int) -> int:
    return min(y, m.alpha[y])


def _check_path(d: PlanarDiagram, path: Sequence[int], start_face: int, end_face: int, label: str) -> None:
    m = d.map
    f = start_face
    edges = set()
    for y in path:
        if not 0 <= y < m.num_darts:
            raise InvalidCutSystem(f"{label} path refers to an unknown dart {y}")
        if m.right_face(y) != f:
            raise InvalidCutSystem(f"{label} path is not continuous at slot {d.names[y]!r}")
        e = _edge_id(m, y)
        if e in edges:
            raise InvalidCutSystem(f"{label} path crosses an edge twice")
        edges.add(e)
        f = m.right_face(m.alpha[y])
    if f != end_face:
        raise InvalidCutSystem(f"{label} path does not end in the reference face")


@dataclass(frozen=True)
class CutVertexInfo:
    arc: str
    ordinal: int
    crossed: int  # dart of the diagram the cut crosses, in its crossing direction


@dataclass
class AugmentedMap:
    """The diagram with both cut arcs drawn in as edges.

    Cut vertices subdivide the crossed edges (slots: back, right, forward,
    left relative to the crossed dart); the tail and head gain one cut slot
    each; a vertex ``inf`` inside the reference face collects both arcs.
    ``edge_order`` lists, for every crossed edge, its cut marks in order
    from the end of the edge's smaller dart.
    """

    map: RotationMap
    cut_darts: frozenset[int]
    cut_vertices: dict[int, CutVertexInfo]
    edge_order: dict[int, tuple[tuple[str, int, int], ...]]
    tail_vertex: int
    head_vertex: int
    inf_vertex: int


def _marks(m: RotationMap, cuts: CutSystem) -> dict[int, list[tuple[str, int, int]]]:
    marks: dict[int, list[tuple[str, int, int]]] = {}
    for arc, path in (("t", cuts.tail_path), ("h", cuts.head_path)):
        for k, y in enumerate(path, start=1):
            marks.setdefault(_edge_id(m, y), []).append((arc, k, y))
    return marks


def _augment(d: PlanarDiagram, cuts: CutSystem, order: Mapping[int, Sequence[tuple[str, int, int]]]) -> AugmentedMap:
    m = d.map
    b = _Builder.from_map(m, d.names)
    ends: dict[tuple[str, int], tuple[int, int]] = {}
    info: dict[str, CutVertexInfo] = {}
    for e, seq in order.items():
        prev = e
        for arc, k, y in seq:
            back, right, fwd, left = (b.add_dart() for _ in range(4))
            vid = b.fresh_id(f"cut{arc}{k}")
            b.add_vertex(vid, "cut", [back, right, fwd, left])
            if y == e:
                b.link(prev, back)
                prev = fwd
            else:
                b.link(prev, fwd)
                prev = back
            ends[(arc, k)] = (right, left)
            info[vid] = CutVertexInfo(arc, k, y)
        b.link(prev, m.alpha[e])
    cut_darts: set[int] = set()
    inf_darts = []
    endpoint_ids = {}
    for arc, path, endpoint in (("t", cuts.tail_path, d.tail_dart), ("h", cuts.head_path, d.head_dart)):
        ev = m.vertices[m.vertex_of[endpoint]].id
        endpoint_ids[arc] = ev
        prev = b.add_dart()
        b.vertices[ev][1].append(prev)
        cut_darts.add(prev)
        for k in range(1, len(path) + 1):
            right, left = ends[(arc, k)]
            b.link(prev, right)
            cut_darts.update((right, left))
            prev = left
        end = b.add_dart()
        cut_darts.add(end)
        b.link(prev, end)
        inf_darts.append(end)
    inf_id = b.fresh_id("inf")
    b.add_vertex(inf_id, "infinity", inf_darts)
    aug, renumber, vindex = b.freeze()
    return AugmentedMap(
        aug,
        frozenset(renumber[x] for x in cut_darts),
        {vindex[vid]: i for vid, i in info.items()},
        {e: tuple(seq) for e, seq in order.items()},
        vindex[endpoint_ids["t"]],
        vindex[endpoint_ids["h"]],
        vindex[inf_id],
    )


def validate_cut_system(d: PlanarDiagram, cuts: CutSystem) -> AugmentedMap:
    """Check a cut system and return the diagram with the cuts drawn in.

    The two arcs may cross a common edge; the order of their crossing
    points along such an edge is whichever keeps the arcs disjoint.
    """
    if d.kind != "knotoid":
        raise InvalidCutSystem("branch cuts are drawn on knotoid diagrams")
    if d.outer_face is not None and cuts.reference_face != d.outer_face:
        raise InvalidCutSystem("the reference face of a planar diagram is its outer face")
    if not 0 <= cuts.reference_face < len(d.map.faces):
        raise InvalidCutSystem(f"no face {cuts.reference_face}")
    _check_path(d, cuts.tail_path, d.tail_face, cuts.reference_face, "tail")
    _check_path(d, cuts.head_path, d.head_face, cuts.reference_face, "head")
    marks = _marks(d.map, cuts)
    shared = [e for e, seq in marks.items() if len(seq) > 1]
    for choice in itertools.product((False, True), repeat=len(shared)):
        order = {e: list(seq) for e, seq in marks.items()}
        for e, flip in zip(shared, choice):
            if flip:
                order[e].reverse()
        aug = _augment(d, cuts, order)
        if aug.map.euler_characteristic() == 2:
            return aug
    raise InvalidCutSystem("the cut arcs cross each other")


def _dual_neighbors(m: RotationMap, f: int) -> list[int]:
    """Darts leaving face ``f`` into a different face, ordered by target
    face then edge id."""
    out = []
    for x in m.faces[f]:
        y = m.sigma(x)
        g = m.right_face(m.alpha[y])
        if g != f:
            out.append((g, _edge_id(m, y), y))
    out.sort()
    return [y for _, _, y in out]


def _dual_distances(m: RotationMap, goal: int) -> dict[int, int]:
    dist = {goal: 0}
    queue = deque([goal])
    while queue:
        f = queue.popleft()
        for y in _dual_neighbors(m, f):
            g = m.right_face(m.alpha[y])
            if g not in dist:
                dist[g] = dist[f] + 1
                queue.append(g)
    return dist


def _dual_bfs(m: RotationMap, start: int, goal: int) -> tuple[int, ...]:
    """Shortest dual path; ties go to the smaller face id, then edge id."""
    return next(_simple_dual_paths(m, start, goal, len(m.faces)))


def _simple_dual_paths(m: RotationMap, start: int, goal: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """Dual paths visiting each face at most once, shortest first and
    lexicographic in (face id, edge id) within a length."""
    dist = _dual_distances(m, goal)
    if start not in dist:
        return
    for length in range(dist[start], max_len + 1):
        stack: list[tuple[int, tuple[int, ...], frozenset[int]]] = [(start, (), frozenset([start]))]
        while stack:
            f, path, seen = stack.pop()
            if f == goal:
                if len(path) == length:
                    yield path
                continue
            remaining = length - len(path)
            for y in reversed(_dual_neighbors(m, f)):
                g = m.right_face(m.alpha[y])
                if g not in seen and dist[g] <= remaining - 1:
                    stack.append((g, path + (y,), seen | {g}))


def _reference_face(d: PlanarDiagram, reference_face: int | None) -> int:
    if d.outer_face is not None:
        if reference_face is not None and reference_face != d.outer_face:
            raise InvalidCutSystem("the reference face of a planar diagram is its outer face")
        return d.outer_face
    ref = d.tail_face if reference_face is None else reference_face
    if not 0 <= ref < len(d.map.faces):
        raise InvalidCutSystem(f"no face {ref}")
    return ref


_HEAD_ATTEMPTS = 5000


def iter_cut_systems(d: PlanarDiagram, reference_face: int | None = None) -> Iterator[CutSystem]:
    """Valid cut systems towards one reference face, shortest tail cut first;
    for each tail cut, the first head cut that avoids it."""
    if d.kind != "knotoid":
        raise InvalidCutSystem("branch cuts are drawn on knotoid diagrams")
    ref = _reference_face(d, reference_face)
    m = d.map
    bound = len(m.faces)
    for tp in _simple_dual_paths(m, d.tail_face, ref, bound):
        for attempt, hp in enumerate(_simple_dual_paths(m, d.head_face, ref, bound)):
            if attempt >= _HEAD_ATTEMPTS:
                break
            cs = CutSystem(tp, hp, ref)
            try:
                validate_cut_system(d, cs)
            except InvalidCutSystem:
                continue
            yield cs
            break


def auto_cut_system(d: PlanarDiagram, reference_face: int | None = None) -> CutSystem:
    """Deterministic cut system: the shortest tail cut and the shortest head
    cut not crossing it.

    The reference face is the outer face of a planar diagram; for spherical
    diagrams it defaults to the face of the tail.
    """
    for cs in iter_cut_systems(d, reference_face):
        return cs
    raise InvalidCutSystem("no cut system found")


def enumerate_cut_systems(d: PlanarDiagram, limit: int = 3) -> list[CutSystem]:
    """Up to ``limit`` distinct valid cut systems.

    Spherical diagrams vary the reference face first; then alternative tail
    and head cuts are tried. Small diagrams may admit fewer than ``limit``.
    """
    if d.kind != "knotoid":
        raise InvalidCutSystem("branch cuts are drawn on knotoid diagrams")
    refs = [d.outer_face] if d.outer_face is not None else list(range(len(d.map.faces)))
    found: list[CutSystem] = []
    for ref in refs:
        if len(found) >= limit:
            return found
        cs = auto_cut_system(d, ref)
        if cs not in found:
            found.append(cs)
    m = d.map
    bound = len(m.faces)
    for ref in refs:
        for tp in _simple_dual_paths(m, d.tail_face, ref, bound):
            for attempt, hp in enumerate(_simple_dual_paths(m, d.head_face, ref, bound)):
                if len(found) >= limit:
                    return found
                if attempt >= _HEAD_ATTEMPTS:
                    break
                cs = CutSystem(tp, hp, ref)
                if cs in found:
                    continue
                try:
                    validate_cut_system(d, cs)
                except InvalidCutSystem:
                    continue
                found.append(cs)
    return found


def to_ggc(d: PlanarDiagram, cuts: CutSystem | None = None) -> GeneralizedGaussCode:
    """Generalised Gauss code with fully annotated cut entries.

    ``cuts=None`` places the cuts automatically; a planar diagram is cut
    towards its outer face.
    """
    if d.kind != "knotoid":
        raise InvalidCode("generalised Gauss codes are defined for knotoid diagrams")
    if cuts is None:
        cuts = auto_cut_system(d)
    aug = validate_cut_system(d, cuts)
    m = d.map
    darts, passings = d.strand
    labels: dict[int, int] = {}
    in_darts: dict[int, dict[bool, int]] = {}
    seq: list[Passage | CutEntry] = []
    for i, z in enumerate(darts):
        e = _edge_id(m, z)
        marks = aug.edge_order.get(e, ())
        if z != e:
            marks = tuple(reversed(marks))
        for arc, k, y in marks:
            seq.append(CutEntry(arc, -1 if z == y else 1, k))
        if i < len(passings):
            p = passings[i]
            labels.setdefault(p.vertex, len(labels) + 1)
            seq.append(Passage(labels[p.vertex], p.over))
            in_darts.setdefault(p.vertex, {})[p.over] = p.in_dart
    signs = [0] * len(labels)
    for v, lab in labels.items():
        signs[lab - 1] = m.crossing_sign(in_darts[v][True], in_darts[v][False])
    return GeneralizedGaussCode(tuple(seq), tuple(signs))


def require_outer_face(d: PlanarDiagram) -> int:
    if d.outer_face is None:
        raise NoOuterFace("this operation needs a planar diagram with a marked outer face")
    return d.outer_face


# -- surgery ------------------------------------------------------------------


class _Builder:
    """Mutable scratch copy of a rotation system used by the surgeries."""

    def __init__(self) -> None:
        self.vertices: dict[str, list] = {}  # id -> [kind, darts, over set]
        self.alpha: dict[int, int] = {}
        self.names: dict[int, str] = {}
        self._next = 0
        self._used_names: set[str] = set()
        self._name_counter = itertools.count()

    @classmethod
    def from_map(cls, m: RotationMap, names: Sequence[str]) -> _Builder:
        b = cls()
        for v in m.vertices:
            b.vertices[v.id] = [v.kind, list(v.darts), set(v.over)]
        b.alpha = dict(enumerate(m.alpha))
        b.names = dict(enumerate(names))
        b._next = m.num_darts
        b._used_names = set(names)
        return b

    def fresh_id(self, base: str) -> str:
        vid = base
        k = 1
        while vid in self.vertices:
            k += 1
            vid = f"{base}_{k}"
        return vid

    def add_dart(self) -> int:
        d = self._next
        self._next += 1
        while True:
            nm = f"s{next(self._name_counter)}"
            if nm not in self._used_names:
                break
        self._used_names.add(nm)
        self.names[d] = nm
        return d

    def add_vertex(self, vid: str, kind: str, darts: Sequence[int], over: Iterable[int] = ()) -> None:
        self.vertices[vid] = [kind, list(darts), set(over)]

    def vertex_of_dart(self, d: int) -> str:
        for vid, (_, darts, _) in self.vertices.items():
            if d in darts:
                return vid
        raise KeyError(d)

    def link(self, a: int, b: int) -> None:
        self.alpha[a] = b
        self.alpha[b] = a

    def remove_vertex(self, vid: str) -> list[int]:
        _, darts, _ = self.vertices.pop(vid)
        for x in darts:
            self.alpha.pop(x, None)
            self.names.pop(x, None)
        return darts

    def subdivide(self, y: int, vid: str, kind: str, over: str | None = None) -> dict[str, int]:
        """Insert a 4-valent vertex on the edge of ``y``.

        Slots in counterclockwise order: back (towards the vertex of ``y``),
        right, forward, left, with right/left taken along ``y``.
        """
        y2 = self.alpha[y]
        s = {k: self.add_dart() for k in ("back", "right", "fwd", "left")}
        over_set: set[int] = set()
        if over == "edge":
            over_set = {s["back"], s["fwd"]}
        elif over == "transversal":
            over_set = {s["right"], s["left"]}
        self.add_vertex(vid, kind, [s["back"], s["right"], s["fwd"], s["left"]], over_set)
        self.link(y, s["back"])
        self.link(s["fwd"], y2)
        return s

    def freeze(self) -> tuple[RotationMap, dict[int, int], dict[str, int]]:
        renumber: dict[int, int] = {}
        verts = []
        vindex = {}
        for vid, (kind, darts, over) in self.vertices.items():
            for x in darts:
                renumber[x] = len(renumber)
            vindex[vid] = len(verts)
            verts.append(MapVertex(vid, kind, tuple(renumber[x] for x in darts), frozenset(renumber[x] for x in over)))
        alpha = [-1] * len(renumber)
        for x, nx in renumber.items():
            alpha[nx] = renumber[self.alpha[x]]
        return RotationMap(verts, alpha), renumber, vindex

    def build(self, kind: str, outer_corner: int | None = None) -> PlanarDiagram:
        if not self.vertices:
            return unknot_diagram()
        m, renumber, _ = self.freeze()
        names = [""] * m.num_darts
        for x, nx in renumber.items():
            names[nx] = self.names[x]
        outer = None
        if outer_corner is not None and outer_corner in renumber:
            outer = m.face_of[renumber[outer_corner]]
        return _finish(m, names, kind, outer)


def _outer_tracker(d: PlanarDiagram, avoid: Iterable[str] = ()) -> int | None:
    """A dart whose corner lies in the outer face, preferring vertices that
    survive the surgery."""
    if d.outer_face is None:
        return None
    m = d.map
    avoid = set(avoid)
    corners = m.faces[d.outer_face]
    ranked = sorted(corners, key=lambda x: (m.vertices[m.vertex_of[x]].kind != "crossing", x))
    for x in ranked:
        if m.vertices[m.vertex_of[x]].id not in avoid:
            return x
    return None


def _check_dual_path(d: PlanarDiagram, path: Sequence[int], start: int, goal: int) -> None:
    m = d.map
    f = start
    seen = set()
    for y in path:
        if m.right_face(y) != f:
            raise InvalidSite(f"closure path is not continuous at slot {d.names[y]!r}")
        if _edge_id(m, y) in seen:
            raise InvalidSite("closure path crosses an edge twice")
        seen.add(_edge_id(m, y))
        f = m.right_face(m.alpha[y])
    if f != goal:
        raise InvalidSite("closure path does not end at the tail")


def _close(d: PlanarDiagram, path: Sequence[Any] | None, new_strand_over: bool) -> PlanarDiagram:
    if d.kind != "knotoid":
        raise InvalidSite("closures apply to knotoid diagrams")
    m = d.map
    if path is None:
        darts = _dual_bfs(m, d.head_face, d.tail_face)
    else:
        darts = tuple(y if isinstance(y, int) else d.dart(y) for y in path)
    _check_dual_path(d, darts, d.head_face, d.tail_face)
    b = _Builder.from_map(m, d.names)
    tail_vid = m.vertices[m.vertex_of[d.tail_dart]].id
    head_vid = m.vertices[m.vertex_of[d.head_dart]].id
    tracker = _outer_tracker(d, avoid=(tail_vid, head_vid))
    strand_ends = []
    for k, y in enumerate(darts, start=1):
        vid = b.fresh_id(f"w{k}")
        s = b.subdivide(y, vid, "crossing", over="transversal" if new_strand_over else "edge")
        strand_ends.append((s["right"], s["left"]))
    head_twin = b.alpha[d.head_dart]
    tail_twin = b.alpha[d.tail_dart]
    b.remove_vertex(tail_vid)
    b.remove_vertex(head_vid)
    if head_twin == d.tail_dart:
        return unknot_diagram()
    chain = [head_twin]
    for r, l in strand_ends:
        chain.extend((r, l))
    chain.append(tail_twin)
    for i in range(0, len(chain), 2):
        b.link(chain[i], chain[i + 1])
    return b.build("knot", tracker)


def close_under(d: PlanarDiagram, path: Sequence[Any] | None = None) -> PlanarDiagram:
    """Join head to tail by an arc passing under every strand it meets.

    ``path`` is a dual path (darts or slot names) from the head's face to
    the tail's face; by default the shortest one.
    """
    return _close(d, path, new_strand_over=False)


def close_over(d: PlanarDiagram, path: Sequence[Any] | None = None) -> PlanarDiagram:
    """Join head to tail by an arc passing over every strand it meets."""
    return _close(d, path, new_strand_over=True)


def _travel_dart(d: PlanarDiagram, y: int) -> int:
    """Whichever dart of the edge of ``y`` points along the curve."""
    darts, _ = d.strand
    if y in darts:
        return y
    if d.map.alpha[y] in darts:
        return d.map.alpha[y]
    raise InvalidSite("edge is not on the curve")


def alpha_cut(d: PlanarDiagram, edge: Any | None = None) -> PlanarDiagram:
    """Cut a knot diagram open in the middle of an edge.

    ``edge`` is a slot of the edge (name or dart); the first edge of the
    curve by default. The result is a knot-type knotoid diagram.
    """
    if d.kind != "knot":
        raise InvalidSite("alpha_cut applies to knot diagrams")
    if not d.map.vertices:
        return crossingless_knotoid()
    if edge is None:
        y = d.strand[0][0]
    else:
        y = edge if isinstance(edge, int) else d.dart(edge)
    z = _travel_dart(d, y)
    tracker = _outer_tracker(d)
    b = _Builder.from_map(d.map, d.names)
    z2 = b.alpha[z]
    t = b.add_dart()
    h = b.add_dart()
    b.add_vertex(b.fresh_id("t"), "tail", [t])
    b.add_vertex(b.fresh_id("h"), "head", [h])
    b.link(z, h)
    b.link(t, z2)
    # keep a tail-first vertex order for readability
    order = {k: b.vertices[k] for k in list(b.vertices)[-2:]}
    order.update({k: v for k, v in b.vertices.items() if k not in order})
    b.vertices = order
    return b.build("knotoid", tracker)


def product_diagram(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    """Product knotoid: the head of ``d1`` is glued to the tail of ``d2``.

    The result lives on the sphere (no outer face).
    """
    if d1.kind != "knotoid" or d2.kind != "knotoid":
        raise InvalidSite("products are defined for knotoid diagrams")
    b = _Builder()
    maps = []
    for tag, d in (("a", d1), ("b", d2)):
        offset = b._next
        m = d.map
        for v in m.vertices:
            b.vertices[f"{tag}{v.id}"] = [v.kind, [x + offset for x in v.darts], {x + offset for x in v.over}]
        for x in range(m.num_darts):
            b.alpha[x + offset] = m.alpha[x] + offset
            b.names[x + offset] = f"{tag}{d.names[x]}"
        b._next += m.num_darts
        maps.append((tag, d, offset))
    b._used_names = set(b.names.values())
    (_, _, off1), (_, _, off2) = maps
    h1 = d1.head_dart + off1
    t2 = d2.tail_dart + off2
    x = b.alpha[h1]
    z = b.alpha[t2]
    b.remove_vertex(f"a{d1.map.vertices[d1.map.vertex_of[d1.head_dart]].id}")
    b.remove_vertex(f"b{d2.map.vertices[d2.map.vertex_of[d2.tail_dart]].id}")
    b.link(x, z)
    return b.build("knotoid")


def r1_insert(d: PlanarDiagram, edge: Any, sign: int = 1, side: str = "left") -> PlanarDiagram:
    """Add a kink with crossing sign ``sign`` on the edge of slot ``edge``.

    The kink loop is drawn on the ``side`` ('left' or 'right') of the curve.
    """
    if sign not in (1, -1) or side not in ("left", "right"):
        raise InvalidSite("sign must be +1/-1 and side 'left'/'right'")
    if not d.map.vertices:
        raise InvalidSite("cannot insert a kink into the crossingless knot diagram")
    y = edge if isinstance(edge, int) else d.dart(edge)
    if not 0 <= y < d.map.num_darts:
        raise InvalidSite(f"no dart {y}")
    z = _travel_dart(d, y)
    tracker = _outer_tracker(d)
    b = _Builder.from_map(d.map, d.names)
    z2 = b.alpha[z]
    s = [b.add_dart() for _ in range(4)]
    # slot 0 receives the strand; it leaves through slot 2, runs around the
    # loop and passes again entering at 3 (loop on the left) or 1 (right)
    if side == "left":
        b.link(s[2], s[3])
        cont = s[1]
        second_in = s[3]
    else:
        b.link(s[2], s[1])
        cont = s[3]
        second_in = s[1]
    vid = b.fresh_id("k")
    # first passage over: sign is + iff the under strand enters one slot ccw
    first_over_sign = 1 if second_in == s[1] else -1
    over = {s[0], s[2]} if first_over_sign == sign else {s[1], s[3]}
    b.add_vertex(vid, "crossing", s, over)
    b.link(z, s[0])
    b.link(cont, z2)
    return b.build(d.kind, tracker)


def r2_insert(d: PlanarDiagram, edge1: Any, edge2: Any, over: str = "first") -> PlanarDiagram:
    """Push a finger of the edge of ``edge1`` across the edge of ``edge2``.

    Both darts must have the same face on their right; the finger runs
    through that face. ``over`` selects which strand goes over.
    """
    if over not in ("first", "second"):
        raise InvalidSite("over must be 'first' or 'second'")
    m = d.map
    y1 = edge1 if isinstance(edge1, int) else d.dart(edge1)
    y2 = edge2 if isinstance(edge2, int) else d.dart(edge2)
    if not (0 <= y1 < m.num_darts and 0 <= y2 < m.num_darts):
        raise InvalidSite("unknown dart")
    if _edge_id(m, y1) == _edge_id(m, y2):
        raise InvalidSite("an R2 move needs two different edges")
    if m.right_face(y1) != m.right_face(y2):
        raise InvalidSite("the two edge segments do not bound a common face")
    tracker = _outer_tracker(d)
    b = _Builder.from_map(m, d.names)
    w1 = b.alpha[y1]
    w2 = b.alpha[y2]
    ca = {k: b.add_dart() for k in ("N", "W", "S", "E")}
    cb = {k: b.add_dart() for k in ("N", "W", "S", "E")}
    first_over = over == "first"
    b.add_vertex(
        b.fresh_id("ra"), "crossing", [ca["N"], ca["W"], ca["S"], ca["E"]],
        {ca["N"], ca["S"]} if first_over else {ca["W"], ca["E"]},
    )
    b.add_vertex(
        b.fresh_id("rb"), "crossing", [cb["N"], cb["W"], cb["S"], cb["E"]],
        {cb["N"], cb["S"]} if first_over else {cb["W"], cb["E"]},
    )
    b.link(y1, ca["N"])
    b.link(ca["S"], cb["S"])
    b.link(cb["N"], w1)
    b.link(y2, cb["E"])
    b.link(cb["W"], ca["E"])
    b.link(ca["W"], w2)
    return b.build(d.kind, tracker)
