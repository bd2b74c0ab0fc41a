"""Gauss codes and generalised Gauss codes of knot and knotoid diagrams.

Text syntax follows the usual ``C / S`` layout::

    1,-2,3,-1,2,-3 / 1,1,1          knot or knotoid Gauss code
    -1,b,b,1,2,-3,b,-2,3 / 1,1,1    generalised code with branch-cut entries
    1,-2,bt+,-1,2 / 1,1             annotated cut entry (arc t/h, direction +/-)

A positive entry ``k`` is an over-passage through crossing ``k``, a negative
entry an under-passage. The part after the slash lists crossing signs in
label order. Every constructor and operation returns codes relabelled by
order of first appearance, so equality of codes is a usable predicate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Literal, Union

from .errors import InvalidCode, MalformedSyntax, MixedAnnotation

__all__ = [
    "Passage",
    "CutEntry",
    "GaussCode",
    "GeneralizedGaussCode",
    "parse_gauss",
    "parse_ggc",
    "parse_code",
    "serialize",
    "canonical",
    "canonical_knot_code",
    "reverse",
    "mirror",
    "symmetric",
    "rotate",
    "product_code",
    "strip_cuts",
    "strip_annotations",
    "code_to_json",
    "code_from_json",
]

Kind = Literal["knot", "knotoid"]


@dataclass(frozen=True)
class Passage:
    label: int
    over: bool

    def __post_init__(self) -> None:
        if not isinstance(self.label, int) or self.label < 1:
            raise InvalidCode(f"crossing labels must be positive integers, got {self.label!r}")

    @property
    def strand(self) -> str:
        return "over" if self.over else "under"

    def token(self) -> str:
        return str(self.label) if self.over else f"-{self.label}"


@dataclass(frozen=True)
class CutEntry:
    """Point where the curve meets a branch cut.

    ``arc`` is ``"t"`` or ``"h"`` (the cut leaving the tail or the head),
    ``direction`` is the sign of the intersection (cut, curve) and
    ``ordinal`` the 1-based position along the cut counted from its branch
    point. All three are optional; plain ``b`` entries carry none of them.
    """

    arc: str | None = None
    direction: int | None = None
    ordinal: int | None = None

    def __post_init__(self) -> None:
        if self.arc not in (None, "t", "h"):
            raise InvalidCode(f"cut arc must be 't' or 'h', got {self.arc!r}")
        if self.direction not in (None, 1, -1):
            raise InvalidCode(f"cut direction must be +1 or -1, got {self.direction!r}")
        if self.direction is not None and self.arc is None:
            raise InvalidCode("a cut direction requires the cut arc to be specified")
        if self.ordinal is not None and (not isinstance(self.ordinal, int) or self.ordinal < 1):
            raise InvalidCode(f"cut ordinal must be a positive integer, got {self.ordinal!r}")

    @property
    def annotated(self) -> bool:
        return self.arc is not None

    def token(self) -> str:
        if self.arc is None:
            return "b"
        if self.direction is None:
            return f"b{self.arc}"
        return f"b{self.arc}{'+' if self.direction > 0 else '-'}"


Entry = Union[Passage, CutEntry]


def _check_passages(passages: list[Passage], signs: tuple[int, ...]) -> None:
    n = len(signs)
    if len(passages) != 2 * n:
        raise InvalidCode(
            f"{len(passages)} passages for {n} crossing signs; expected {2 * n}"
        )
    seen: dict[int, list[bool]] = {}
    for p in passages:
        seen.setdefault(p.label, []).append(p.over)
    for label in range(1, n + 1):
        flags = seen.get(label)
        if flags is None or len(flags) != 2:
            count = 0 if flags is None else len(flags)
            raise InvalidCode(f"label {label} appears {count} times; expected twice")
        if sorted(flags) != [False, True]:
            raise InvalidCode(f"label {label} must appear once over and once under")
    extra = sorted(set(seen) - set(range(1, n + 1)))
    if extra:
        raise InvalidCode(f"labels {extra} exceed the number of crossings {n}")
    for s in signs:
        if s not in (1, -1):
            raise InvalidCode(f"crossing signs must be +1 or -1, got {s!r}")


@dataclass(frozen=True)
class GaussCode:
    """Signed Gauss code ``(C, S)`` of a knot or knotoid diagram."""

    sequence: tuple[Passage, ...] = ()
    signs: tuple[int, ...] = ()
    kind: Kind = "knotoid"

    def __post_init__(self) -> None:
        object.__setattr__(self, "sequence", tuple(self.sequence))
        object.__setattr__(self, "signs", tuple(self.signs))
        if self.kind not in ("knot", "knotoid"):
            raise InvalidCode(f"kind must be 'knot' or 'knotoid', got {self.kind!r}")
        for e in self.sequence:
            if isinstance(e, CutEntry):
                raise InvalidCode("plain Gauss codes cannot contain cut entries")
            if not isinstance(e, Passage):
                raise InvalidCode(f"unexpected sequence entry {e!r}")
        _check_passages(list(self.sequence), self.signs)

    @property
    def n(self) -> int:
        """Number of crossings."""
        return len(self.signs)

    @property
    def passages(self) -> tuple[Passage, ...]:
        return tuple(e for e in self.sequence if isinstance(e, Passage))

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def __str__(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class GeneralizedGaussCode(GaussCode):
    """Knotoid Gauss code that also records crossings with the branch cuts."""

    kind: Kind = field(default="knotoid")

    def __post_init__(self) -> None:
        object.__setattr__(self, "sequence", tuple(self.sequence))
        object.__setattr__(self, "signs", tuple(self.signs))
        if self.kind != "knotoid":
            raise InvalidCode("generalised Gauss codes describe knotoids only")
        passages = []
        cuts = []
        for e in self.sequence:
            if isinstance(e, Passage):
                passages.append(e)
            elif isinstance(e, CutEntry):
                cuts.append(e)
            else:
                raise InvalidCode(f"unexpected sequence entry {e!r}")
        _check_passages(passages, self.signs)
        if len({c.annotated for c in cuts}) > 1:
            raise MixedAnnotation("annotated and plain cut entries cannot be mixed")
        for arc in ("t", "h"):
            ords = [c.ordinal for c in cuts if c.arc == arc and c.ordinal is not None]
            if len(ords) != len(set(ords)):
                raise InvalidCode(f"repeated ordinal on cut arc {arc!r}")

    @property
    def cuts(self) -> tuple[CutEntry, ...]:
        return tuple(e for e in self.sequence if isinstance(e, CutEntry))


AnyCode = Union[GaussCode, GeneralizedGaussCode]


def _rebuild(code: AnyCode, sequence, signs) -> AnyCode:
    if isinstance(code, GeneralizedGaussCode):
        return GeneralizedGaussCode(tuple(sequence), tuple(signs))
    return GaussCode(tuple(sequence), tuple(signs), code.kind)


def canonical(code: AnyCode) -> AnyCode:
    """Relabel crossings by order of first appearance along the sequence."""
    mapping: dict[int, int] = {}
    for e in code.sequence:
        if isinstance(e, Passage) and e.label not in mapping:
            mapping[e.label] = len(mapping) + 1
    seq = [Passage(mapping[e.label], e.over) if isinstance(e, Passage) else e for e in code.sequence]
    signs = [0] * code.n
    for old, new in mapping.items():
        signs[new - 1] = code.signs[old - 1]
    return _rebuild(code, seq, signs)


def _code_key(code: GaussCode) -> tuple:
    return tuple((p.label, 0 if p.over else 1) for p in code.sequence) + tuple(-s for s in code.signs)


def canonical_knot_code(code: GaussCode) -> GaussCode:
    """Canonical form of a closed-curve code: the basepoint is chosen among
    all cyclic rotations to minimise the relabelled code."""
    if code.kind != "knot":
        raise InvalidCode("basepoint canonicalisation applies to knot codes only")
    seq = code.sequence
    if not seq:
        return code
    best = None
    for i in range(len(seq)):
        cand = canonical(GaussCode(seq[i:] + seq[:i], code.signs, "knot"))
        if best is None or _code_key(cand) < _code_key(best):
            best = cand
    return best


# -- text syntax --------------------------------------------------------------

_PAIR_FORM = re.compile(r"^\(\s*\((?P<seq>[^()]*)\)\s*,\s*\((?P<signs>[^()]*)\)\s*\)$")
_CUT_TOKEN = re.compile(r"^b(?:(?P<arc>[th])(?P<dir>[+-])?)?$")


def _split_text(text: str) -> tuple[str, str]:
    s = text.strip()
    m = _PAIR_FORM.match(s)
    if m:
        return m.group("seq"), m.group("signs")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if s.count("/") != 1:
        raise MalformedSyntax("expected exactly one '/' separating sequence and signs")
    seq, signs = s.split("/")
    return seq, signs


def _tokens(part: str) -> list[str]:
    part = "".join(part.split())
    if not part:
        return []
    toks = part.split(",")
    if any(t == "" for t in toks):
        raise MalformedSyntax("empty entry in comma-separated list")
    return toks


def _int_token(tok: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise MalformedSyntax(f"unparseable token {tok!r}")
    return int(tok)


def _parse(text: str, allow_cuts: bool) -> tuple[list[Entry], list[int]]:
    if not isinstance(text, str):
        raise MalformedSyntax("code text must be a string")
    seq_txt, signs_txt = _split_text(text)
    entries: list[Entry] = []
    for tok in _tokens(seq_txt):
        m = _CUT_TOKEN.match(tok)
        if m:
            if not allow_cuts:
                raise MalformedSyntax(f"cut entry {tok!r} not allowed in a plain Gauss code")
            d = m.group("dir")
            entries.append(CutEntry(m.group("arc"), None if d is None else (1 if d == "+" else -1)))
            continue
        value = _int_token(tok)
        if value == 0:
            raise InvalidCode("crossing label 0 is not allowed")
        entries.append(Passage(abs(value), value > 0))
    signs = [_int_token(t) for t in _tokens(signs_txt)]
    return entries, signs


def parse_gauss(text: str, kind: Kind = "knotoid") -> GaussCode:
    """Parse ``"<entries> / <signs>"`` into a validated, canonical code."""
    entries, signs = _parse(text, allow_cuts=False)
    return canonical(GaussCode(tuple(entries), tuple(signs), kind))


def parse_ggc(text: str) -> GeneralizedGaussCode:
    """Parse a generalised Gauss code; ``b``/``bt+``/``bh-``... mark cut crossings."""
    entries, signs = _parse(text, allow_cuts=True)
    return canonical(GeneralizedGaussCode(tuple(entries), tuple(signs)))


def parse_code(text: str, kind: Kind = "knotoid") -> AnyCode:
    """Parse either flavour: a generalised code if cut tokens are present."""
    entries, signs = _parse(text, allow_cuts=True)
    if any(isinstance(e, CutEntry) for e in entries):
        if kind != "knotoid":
            raise InvalidCode("cut entries only make sense for knotoids")
        return canonical(GeneralizedGaussCode(tuple(entries), tuple(signs)))
    return canonical(GaussCode(tuple(entries), tuple(signs), kind))


def serialize(code: AnyCode) -> str:
    seq = ",".join(e.token() for e in code.sequence)
    signs = ",".join(str(s) for s in code.signs)
    return f"{seq} / {signs}"


# -- JSON mirror --------------------------------------------------------------


def code_to_json(code: AnyCode) -> dict[str, Any]:
    seq: list[dict[str, Any]] = []
    for e in code.sequence:
        if isinstance(e, Passage):
            seq.append({"label": e.label, "strand": e.strand})
        else:
            seq.append({"cut": {"arc": e.arc, "direction": e.direction, "ordinal": e.ordinal}})
    return {"sequence": seq, "signs": list(code.signs), "kind": code.kind}


def code_from_json(data: dict[str, Any]) -> AnyCode:
    try:
        entries: list[Entry] = []
        for item in data["sequence"]:
            if "cut" in item:
                c = item["cut"] or {}
                entries.append(CutEntry(c.get("arc"), c.get("direction"), c.get("ordinal")))
            else:
                strand = item["strand"]
                if strand not in ("over", "under"):
                    raise MalformedSyntax(f"strand must be 'over' or 'under', got {strand!r}")
                entries.append(Passage(int(item["label"]), strand == "over"))
        signs = tuple(int(s) for s in data["signs"])
        kind = data.get("kind", "knotoid")
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSyntax(f"bad JSON code: {exc}") from exc
    if any(isinstance(e, CutEntry) for e in entries):
        if kind != "knotoid":
            raise InvalidCode("cut entries only make sense for knotoids")
        return canonical(GeneralizedGaussCode(tuple(entries), signs))
    return canonical(GaussCode(tuple(entries), signs, kind))


# -- involutions and products -------------------------------------------------


def strip_cuts(code: AnyCode) -> GaussCode:
    """Forget the cut entries of a generalised code."""
    return canonical(GaussCode(code.passages, code.signs, code.kind))


def strip_annotations(code: GeneralizedGaussCode) -> GeneralizedGaussCode:
    """Replace annotated cut entries by plain ``b`` entries."""
    seq = [CutEntry() if isinstance(e, CutEntry) else e for e in code.sequence]
    return GeneralizedGaussCode(tuple(seq), code.signs)


def _swap_arc(c: CutEntry) -> CutEntry:
    if c.arc is None:
        return c
    arc = "h" if c.arc == "t" else "t"
    direction = None if c.direction is None else -c.direction
    return CutEntry(arc, direction, c.ordinal)


def reverse(code: AnyCode) -> AnyCode:
    """Change the orientation: tail and head swap roles."""
    seq = [_swap_arc(e) if isinstance(e, CutEntry) else e for e in reversed(code.sequence)]
    return canonical(_rebuild(code, seq, code.signs))


def mirror(code: AnyCode) -> AnyCode:
    """Change every crossing."""
    seq = [Passage(e.label, not e.over) if isinstance(e, Passage) else e for e in code.sequence]
    return canonical(_rebuild(code, seq, [-s for s in code.signs]))


def _negate_direction(c: CutEntry) -> CutEntry:
    if c.direction is None:
        return c
    return CutEntry(c.arc, -c.direction, c.ordinal)


def symmetric(code: AnyCode) -> AnyCode:
    """Reflect the diagram in the line through its endpoints.

    A planar reflection keeps the traversal order and the over/under data
    and reverses the handedness of every crossing and every cut crossing.
    """
    seq = [_negate_direction(e) if isinstance(e, CutEntry) else e for e in code.sequence]
    return canonical(_rebuild(code, seq, [-s for s in code.signs]))


def rotate(code: AnyCode) -> AnyCode:
    """Rotation of a knotoid: symmetry followed by mirror reflection."""
    return mirror(symmetric(code))


def product_code(k1: GaussCode, k2: GaussCode) -> GaussCode:
    """Code of the product knotoid ``k1 . k2`` (head of k1 glued to tail of k2)."""
    for k in (k1, k2):
        if k.kind != "knotoid":
            raise InvalidCode("products are defined for knotoids only")
        if isinstance(k, GeneralizedGaussCode) and k.cuts:
            raise InvalidCode("products of generalised codes must go through diagrams")
    shift = k1.n
    seq = list(k1.passages) + [Passage(p.label + shift, p.over) for p in k2.passages]
    return canonical(GaussCode(tuple(seq), k1.signs + k2.signs, "knotoid"))
