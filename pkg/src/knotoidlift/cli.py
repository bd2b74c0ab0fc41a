"""Command-line front end: ``knotoidlift VERB [INPUT ...] [options]``.

Inputs are file paths, ``-`` for standard input, or ``fixture:NAME[/KEY]``
for the bundled corpus. Text starting with ``{`` is read as JSON (a diagram
if it has ``vertices``, a code otherwise); anything else is a code in the
``"entries / signs"`` syntax. Exit status: 0 on success, 1 on a validation
error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from typing import Any, TextIO

from . import bracket as bk
from . import codes, lift, planar
from .errors import InvalidCutSystem, KnotoidError, MalformedSyntax
from .fixtures import fixture_cuts, fixture_diagram

VERBS = (
    "parse", "validate", "reverse", "mirror", "symmetric", "rotate", "product",
    "gauss", "ggc", "close-under", "close-over", "alpha", "lift", "double",
    "winding", "twist-embed", "bracket", "certify",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 itself; keep one message format
        raise UsageError(message)


class _Input:
    """One parsed input: either a diagram (with optional embedded cuts) or a code."""

    def __init__(self, diagram: planar.PlanarDiagram | None = None, cuts: planar.CutSystem | None = None,
                 code: codes.GaussCode | None = None):
        self.diagram = diagram
        self.cuts = cuts
        self.code = code


def _read(source: str, stdin: TextIO) -> _Input | str:
    if source.startswith("fixture:"):
        ref = source[len("fixture:"):]
        return _Input(fixture_diagram(ref), fixture_cuts(ref))
    if source == "-":
        return stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source!r}: {exc.strerror}") from exc


def _load(source: str, kind: str, stdin: TextIO) -> _Input:
    got = _read(source, stdin)
    if isinstance(got, _Input):
        return got
    text = got.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedSyntax(f"invalid JSON: {exc}") from exc
        if isinstance(data, dict) and "vertices" in data:
            d = planar.build_diagram(data)
            cuts = planar.CutSystem.from_json(d, data["cuts"]) if "cuts" in data else None
            return _Input(d, cuts)
        if isinstance(data, dict) and "kind" not in data:
            data = {**data, "kind": kind}
        return _Input(code=codes.code_from_json(data))
    return _Input(code=codes.parse_code(text, kind))


def _as_code(inp: _Input) -> codes.GaussCode:
    if inp.code is not None:
        return inp.code
    return planar.to_gauss(inp.diagram)


def _as_diagram(inp: _Input) -> planar.PlanarDiagram:
    if inp.diagram is not None:
        return inp.diagram
    return planar.diagram_from_code(codes.strip_cuts(inp.code))


def _cuts(inp: _Input, d: planar.PlanarDiagram, option: str | None, stdin: TextIO) -> planar.CutSystem | None:
    if option is None:
        return inp.cuts if inp.diagram is d else None
    if option == "auto":
        return None
    got = _read(option, stdin)
    if isinstance(got, _Input):
        raise UsageError("--cut expects 'auto' or a JSON file")
    try:
        data = json.loads(got)
    except json.JSONDecodeError as exc:
        raise InvalidCutSystem(f"invalid cut JSON: {exc}") from exc
    return planar.CutSystem.from_json(d, data)


def _emit_code(code: codes.GaussCode, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(codes.code_to_json(code)) + "\n")
    else:
        out.write(codes.serialize(code) + "\n")


def _emit_diagram(d: planar.PlanarDiagram, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(d.to_json_text() + "\n")
    else:
        _emit_code(planar.to_gauss(d), fmt, out)


def _emit_json(obj: Any, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotoidlift", description="Knotoid codes, diagrams and their double branched cover lifts.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("inputs", nargs="*", default=["-"], help="path, '-' for stdin, or fixture:NAME[/KEY]")
    p.add_argument("--format", choices=("paper", "json"), default="paper")
    p.add_argument("--kind", choices=("knot", "knotoid"), default=None,
                   help="how to read a plain code (default: knotoid; knot for certify)")
    p.add_argument("--max-crossings", type=int, default=None, help="bracket crossing ceiling (default 24)")
    p.add_argument("--cut", default=None, help="'auto' or a JSON cut-system file")
    p.add_argument("--edge", default=None, help="slot name of the edge to cut (alpha)")
    p.add_argument("--twists", type=int, default=1, help="number of full twists (twist-embed)")
    return p


def _dispatch(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> None:
    verb = args.verb
    kind = args.kind or ("knot" if verb in ("certify", "alpha") else "knotoid")
    inputs = args.inputs or ["-"]
    if verb == "product":
        if len(inputs) != 2:
            raise UsageError("product takes exactly two inputs")
    elif len(inputs) != 1:
        raise UsageError(f"{verb} takes one input")
    if sum(1 for s in inputs if s == "-") > 1:
        raise UsageError("standard input can be used once")
    loaded = [_load(s, kind, stdin) for s in inputs]
    inp = loaded[0]
    fmt = args.format

    if verb == "parse":
        _emit_code(_as_code(inp), fmt, out)
    elif verb == "validate":
        d = _as_diagram(inp)
        summary = {
            "kind": d.kind,
            "planar": d.is_planar,
            "crossings": len(d.crossings),
            "vertices": len(d.map.vertices),
            "edges": d.map.num_edges,
            "faces": len(planar.faces(d)),
        }
        if fmt == "json":
            _emit_json({"valid": True, **summary}, out)
        else:
            out.write("valid " + " ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
    elif verb in ("reverse", "mirror", "symmetric", "rotate"):
        op = {"reverse": codes.reverse, "mirror": codes.mirror, "symmetric": codes.symmetric, "rotate": codes.rotate}
        _emit_code(op[verb](_as_code(inp)), fmt, out)
    elif verb == "product":
        a, b = loaded
        if a.diagram is not None and b.diagram is not None:
            _emit_diagram(planar.product_diagram(a.diagram, b.diagram), fmt, out)
        else:
            _emit_code(codes.product_code(codes.strip_cuts(_as_code(a)), codes.strip_cuts(_as_code(b))), fmt, out)
    elif verb == "gauss":
        _emit_code(planar.to_gauss(_as_diagram(inp)), fmt, out)
    elif verb == "ggc":
        d = _as_diagram(inp)
        _emit_code(planar.to_ggc(d, _cuts(inp, d, args.cut, stdin)), fmt, out)
    elif verb in ("close-under", "close-over"):
        op = planar.close_under if verb == "close-under" else planar.close_over
        _emit_diagram(op(_as_diagram(inp)), fmt, out)
    elif verb == "alpha":
        d = _as_diagram(inp)
        _emit_diagram(planar.alpha_cut(d, args.edge), fmt, out)
    elif verb == "lift":
        if inp.diagram is not None:
            g = planar.to_ggc(inp.diagram, _cuts(inp, inp.diagram, args.cut, stdin))
        else:
            g = inp.code
        _emit_code(lift.lift_code(g), fmt, out)
    elif verb in ("double", "winding", "twist-embed"):
        d = _as_diagram(inp)
        a = lift.double_diagram(d, _cuts(inp, d, args.cut, stdin))
        if verb == "winding":
            w = lift.winding(a)
            _emit_json({"winding": w}, out) if fmt == "json" else out.write(f"{w}\n")
        elif verb == "double":
            if fmt == "json":
                out.write(a.to_json_text() + "\n")
            else:
                _emit_code(lift.annular_to_code(a), fmt, out)
        else:
            _emit_code(lift.twist_embed(a, args.twists), fmt, out)
    elif verb == "bracket":
        value = bk.bracket(codes.strip_cuts(_as_code(inp)), max_crossings=args.max_crossings)
        if fmt == "json":
            _emit_json({"raw": value.raw.to_json(), "writhe": value.writhe, "normalized": value.normalized.to_json()}, out)
        else:
            out.write(f"{value.normalized}\n")
    elif verb == "certify":
        code = codes.strip_cuts(_as_code(inp))
        cert = bk.nontriviality_certificate(code, max_crossings=args.max_crossings)
        _emit_json({"certificate": str(cert)}, out) if fmt == "json" else out.write(f"{cert}\n")


def run(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        _dispatch(args, stdin, stdout)
    except UsageError as exc:
        stderr.write(f"error: usage: {exc}\n")
        return 2
    except KnotoidError as exc:
        stderr.write(f"error: {exc.error_id}: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
