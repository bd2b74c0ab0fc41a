"""Regenerate the bundled diagram corpus in src/knotoidlift/data.

Every fixture is rebuilt from a signed Gauss code (which determines the
sphere map), plus an outer face and, where needed, a cut system chosen by
search. Run from the repository root: ``python3 scripts/build_fixtures.py``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from knotoidlift import planar
from knotoidlift.codes import parse_gauss, rotate, serialize
from knotoidlift.planar import diagram_from_code, iter_cut_systems, to_ggc

DATA = Path(__file__).resolve().parents[1] / "src" / "knotoidlift" / "data"

# reference knots (codes converted from standard tables)
KINOSHITA_TERASAKA = "1,2,-3,4,-2,5,-6,3,-4,-7,8,-9,-5,6,10,-8,11,-1,7,-10,9,-11 / -1,1,1,1,-1,-1,-1,-1,1,1,-1"
CONWAY = "1,2,-3,4,-2,5,-6,3,-4,-7,8,-9,-5,6,10,-11,7,-1,9,-10,11,-8 / 1,1,1,1,-1,-1,1,-1,-1,-1,-1"

TWO_CROSSING = "1,-2,-1,2 / 1,1"
THREE_CROSSING = "-1,1,2,-3,-2,3 / 1,1,1"
KINK = "1,-1 / 1"
# found by a breadth-first search over R1/R2 insertions into the trivial knotoid
TWIST_LEFT = "-1,-2,3,2,1,-3 / 1,-1,-1"
TWIST_RIGHT = "1,2,3,-2,-1,-3 / -1,1,-1"


def _plain(code) -> str:
    return re.sub(r"b[th][+-]?", "b", serialize(code))


def _with_cuts(d: planar.PlanarDiagram, target: str) -> dict:
    """Diagram JSON plus the first cut system whose plain gGC is ``target``."""
    for cs in iter_cut_systems(d):
        if _plain(to_ggc(d, cs)) == target:
            return {**d.to_json(), "cuts": cs.to_json(d)}
    raise SystemExit(f"no cut system reproduces {target}")


def _monogon(d: planar.PlanarDiagram) -> int:
    return next(i for i, cyc in enumerate(d.map.faces) if len(cyc) == 1)


def _bigon(d: planar.PlanarDiagram) -> int:
    return next(i for i, cyc in enumerate(d.map.faces) if len(cyc) == 2)


def _alpha_knotoid(text: str) -> planar.PlanarDiagram:
    return planar.alpha_cut(diagram_from_code(parse_gauss(text, "knot")))


def build() -> dict[str, dict]:
    two = diagram_from_code(parse_gauss(TWO_CROSSING))
    three = diagram_from_code(parse_gauss(THREE_CROSSING))
    kink = diagram_from_code(parse_gauss(KINK))
    kink_in = kink.with_outer_face(_monogon(kink))
    kink_out = kink.with_outer_face(next(f for f in range(2) if f != _monogon(kink)))
    fixtures: dict[str, dict] = {}

    fixtures["trefoil"] = {
        "description": "Standard three-crossing trefoil knot diagram.",
        "diagrams": {"knot": diagram_from_code(parse_gauss("1,-2,3,-1,2,-3 / 1,1,1", "knot")).to_json()},
    }
    fixtures["three_crossing_knotoid"] = {
        "description": "Three-crossing proper knotoid on the sphere, code -1,1,2,-3,-2,3 / 1,1,1.",
        "diagrams": {"k": three.to_json()},
    }
    three_planar = three.with_outer_face(_monogon(three))
    fixtures["three_crossing_knotoid_cut"] = {
        "description": "The three-crossing knotoid drawn in the disk with the kink loop as outer face, "
        "with cuts giving the gGC -1,b,b,1,2,-3,b,-2,3 / 1,1,1.",
        "diagrams": {"k": _with_cuts(three_planar, "-1,b,b,1,2,-3,b,-2,3 / 1,1,1")},
    }
    two_planar = two.with_outer_face(two.tail_face)
    fixtures["two_crossing_knotoid"] = {
        "description": "Two-crossing proper knotoid with gGC 1,-2,b,-1,2 / 1,1; its lift is a trefoil.",
        "diagrams": {"k": _with_cuts(two_planar, "1,-2,b,-1,2 / 1,1")},
    }
    fixtures["kink_winding_pair"] = {
        "description": "A planar kink with the outer face inside its loop (lift of winding number 3) "
        "and the same kink with the outer face outside (lift is the core).",
        "diagrams": {"k1": kink_in.to_json(), "k2": kink_out.to_json()},
    }
    fixtures["planar_trivial_pair"] = {
        "description": "Two planar knotoids, inequivalent in the plane, both trivial on the sphere.",
        "diagrams": {"k1": kink_in.to_json(), "k2": planar.crossingless_knotoid().to_json()},
    }
    fixtures["closure_pair"] = {
        "description": "Two inequivalent knotoids whose underpass closures are trefoils and whose "
        "overpass closures are trivial.",
        "diagrams": {"k1": two.to_json(), "k2": three.to_json()},
    }
    c2 = parse_gauss(TWO_CROSSING)
    c3 = parse_gauss(THREE_CROSSING)
    fixtures["knotoids_and_rotations"] = {
        "description": "Two proper knotoids and their rotations.",
        "diagrams": {
            "k": two.to_json(),
            "k_rot": diagram_from_code(rotate(c2)).to_json(),
            "kprime": three.to_json(),
            "kprime_rot": diagram_from_code(rotate(c3)).to_json(),
        },
    }
    fixtures["product"] = {
        "description": "Two factors and their five-crossing product knotoid.",
        "diagrams": {
            "k1": two.to_json(),
            "k2": three.to_json(),
            "product": planar.product_diagram(two, three).to_json(),
        },
    }
    kt = _alpha_knotoid(KINOSHITA_TERASAKA)
    cw = _alpha_knotoid(CONWAY)
    fixtures["mutant_products"] = {
        "description": "Knot-type knotoids of the Kinoshita-Terasaka and Conway mutant knots, each "
        "multiplied by the two-crossing knotoid.",
        "diagrams": {
            "k1": planar.product_diagram(kt, two).to_json(),
            "k2": planar.product_diagram(cw, two).to_json(),
        },
    }
    t1 = diagram_from_code(parse_gauss(TWIST_LEFT))
    t2 = diagram_from_code(parse_gauss(TWIST_RIGHT))
    fixtures["twist_pair"] = {
        "description": "Two planar knotoids, both trivial on the sphere, drawn with a bigon as outer "
        "face. One full twist of the solid torus turns their lifts into 9_46 and (a mirror of) 5_2.",
        "diagrams": {"k1": t1.with_outer_face(_bigon(t1)).to_json(), "k2": t2.with_outer_face(_bigon(t2)).to_json()},
    }
    return fixtures


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    for name, body in build().items():
        (DATA / f"{name}.json").write_text(json.dumps(body, indent=1) + "\n")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
