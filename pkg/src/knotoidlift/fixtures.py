"""Bundled diagram corpus.

Each ``data/<name>.json`` file holds ``{"description": ..., "diagrams":
{key: diagram}}`` where a diagram is the planar JSON format, optionally
with a ``"cuts"`` entry giving a cut system by slot names.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any

from .errors import MalformedDiagram
from .planar import CutSystem, PlanarDiagram, build_diagram

__all__ = ["fixture_names", "load_fixture", "fixture_diagram", "fixture_cuts", "all_fixture_diagrams"]


def fixture_names() -> list[str]:
    root = resources.files("knotoidlift") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


@lru_cache(maxsize=None)
def _raw(name: str) -> dict[str, Any]:
    path = resources.files("knotoidlift") / "data" / f"{name}.json"
    if not path.is_file():
        raise MalformedDiagram(f"no fixture named {name!r}")
    return json.loads(path.read_text())


def load_fixture(name: str) -> dict[str, Any]:
    return json.loads(json.dumps(_raw(name)))


def _split(ref: str) -> tuple[str, str]:
    name, _, key = ref.partition("/")
    diagrams = _raw(name)["diagrams"]
    if not key:
        if len(diagrams) != 1:
            raise MalformedDiagram(f"fixture {name!r} holds {sorted(diagrams)}; say which one as {name}/KEY")
        key = next(iter(diagrams))
    if key not in diagrams:
        raise MalformedDiagram(f"fixture {name!r} has no diagram {key!r}")
    return name, key


def fixture_diagram(ref: str) -> PlanarDiagram:
    """Diagram ``name/key`` (the key may be omitted for one-diagram files)."""
    name, key = _split(ref)
    return build_diagram(_raw(name)["diagrams"][key])


def fixture_cuts(ref: str) -> CutSystem | None:
    name, key = _split(ref)
    spec = _raw(name)["diagrams"][key]
    if "cuts" not in spec:
        return None
    return CutSystem.from_json(fixture_diagram(ref), spec["cuts"])


def all_fixture_diagrams() -> dict[str, PlanarDiagram]:
    out = {}
    for name in fixture_names():
        for key in _raw(name)["diagrams"]:
            out[f"{name}/{key}"] = fixture_diagram(f"{name}/{key}")
    return out
