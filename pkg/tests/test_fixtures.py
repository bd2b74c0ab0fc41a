from __future__ import annotations

import pytest

from knotoidlift import planar
from knotoidlift.bracket import normalized_bracket
from knotoidlift.codes import product_code, rotate, serialize, strip_annotations
from knotoidlift.errors import MalformedDiagram
from knotoidlift.fixtures import all_fixture_diagrams, fixture_cuts, fixture_diagram, fixture_names, load_fixture
from knotoidlift.laurent import ONE
from knotoidlift.lift import annular_to_code, double_diagram, lift_code, twist_embed, winding

EXPECTED = {
    "closure_pair",
    "kink_winding_pair",
    "knotoids_and_rotations",
    "mutant_products",
    "planar_trivial_pair",
    "product",
    "three_crossing_knotoid",
    "three_crossing_knotoid_cut",
    "trefoil",
    "twist_pair",
    "two_crossing_knotoid",
}


def nb(code):
    return normalized_bracket(code, max_crossings=64)


def code_of(ref: str) -> str:
    return serialize(planar.to_gauss(fixture_diagram(ref)))


def test_corpus_is_complete():
    assert set(fixture_names()) == EXPECTED
    for name in EXPECTED:
        data = load_fixture(name)
        assert data["description"] and data["diagrams"]


def test_every_diagram_is_valid():
    for ref, d in all_fixture_diagrams().items():
        assert d.map.euler_characteristic() == 2, ref
        if d.kind == "knotoid":
            lift_code(planar.to_ggc(d, fixture_cuts(ref)))


def test_lookup_errors():
    with pytest.raises(MalformedDiagram):
        fixture_diagram("no_such_fixture")
    with pytest.raises(MalformedDiagram):
        fixture_diagram("closure_pair")
    with pytest.raises(MalformedDiagram):
        fixture_diagram("closure_pair/k9")
    assert fixture_diagram("trefoil").kind == "knot"


def test_single_diagrams():
    assert code_of("trefoil") == "1,-2,3,-1,2,-3 / 1,1,1"
    assert len(planar.faces(fixture_diagram("trefoil"))) == 5
    assert code_of("three_crossing_knotoid") == "-1,1,2,-3,-2,3 / 1,1,1"
    assert len(planar.faces(fixture_diagram("three_crossing_knotoid"))) == 4


def test_embedded_cuts_reproduce_the_printed_codes():
    g = planar.to_ggc(fixture_diagram("three_crossing_knotoid_cut"), fixture_cuts("three_crossing_knotoid_cut/k"))
    assert serialize(strip_annotations(g)) == "-1,b,b,1,2,-3,b,-2,3 / 1,1,1"
    g = planar.to_ggc(fixture_diagram("two_crossing_knotoid"), fixture_cuts("two_crossing_knotoid/k"))
    assert serialize(strip_annotations(g)) == "1,-2,b,-1,2 / 1,1"
    assert serialize(lift_code(g)) == "1,-2,-3,4,2,-1,-4,3 / -1,-1,-1,-1"


def test_kink_windings():
    assert abs(winding(double_diagram(fixture_diagram("kink_winding_pair/k1")))) == 3
    assert abs(winding(double_diagram(fixture_diagram("kink_winding_pair/k2")))) == 1


def test_planar_trivial_pair():
    k1, k2 = fixture_diagram("planar_trivial_pair/k1"), fixture_diagram("planar_trivial_pair/k2")
    # the same knotoid on the sphere, told apart in the plane by their lifts
    assert nb(planar.to_gauss(k1)) == nb(planar.to_gauss(k2)) == ONE
    assert abs(winding(double_diagram(k1))) != abs(winding(double_diagram(k2)))


def test_rotations():
    for k in ("k", "kprime"):
        assert code_of(f"knotoids_and_rotations/{k}_rot") == serialize(rotate(planar.to_gauss(fixture_diagram(f"knotoids_and_rotations/{k}"))))


def test_product():
    p = fixture_diagram("product/product")
    factors = [planar.to_gauss(fixture_diagram(f"product/{k}")) for k in ("k1", "k2")]
    assert len(p.crossings) == 5
    assert planar.to_gauss(p) == product_code(*factors)


def test_mutant_products_share_brackets():
    k1, k2 = (fixture_diagram(f"mutant_products/{k}") for k in ("k1", "k2"))
    assert len(k1.crossings) == len(k2.crossings) == 13
    assert planar.to_gauss(k1) != planar.to_gauss(k2)
    assert nb(planar.to_gauss(k1)) == nb(planar.to_gauss(k2))
    assert nb(annular_to_code(double_diagram(k1))) == nb(annular_to_code(double_diagram(k2)))


def test_twist_pair():
    k1, k2 = (fixture_diagram(f"twist_pair/{k}") for k in ("k1", "k2"))
    for d in (k1, k2):
        assert d.is_planar
        assert nb(planar.to_gauss(d)) == ONE
        assert nb(annular_to_code(double_diagram(d))) == ONE
    assert nb(twist_embed(double_diagram(k1), 1)) != nb(twist_embed(double_diagram(k2), 1))
