"""Knotoids, their generalised Gauss codes and their lifts to knots through
the double branched cover."""

from __future__ import annotations

from .bracket import BracketValue, Certificate, nontriviality_certificate, normalized_bracket
from .codes import (
    CutEntry,
    GaussCode,
    GeneralizedGaussCode,
    Passage,
    canonical,
    canonical_knot_code,
    mirror,
    parse_code,
    parse_gauss,
    parse_ggc,
    product_code,
    reverse,
    rotate,
    serialize,
    strip_annotations,
    strip_cuts,
    symmetric,
)
from .errors import KnotoidError
from .laurent import A, LaurentPolynomial
from .lift import AnnularDiagram, annular_to_code, double_diagram, lift_code, twist_embed, winding
from .planar import (
    CutSystem,
    PlanarDiagram,
    alpha_cut,
    auto_cut_system,
    build_diagram,
    close_over,
    close_under,
    diagram_from_code,
    enumerate_cut_systems,
    faces,
    product_diagram,
    r1_insert,
    r2_insert,
    to_gauss,
    to_ggc,
)

__all__ = [name for name in dir() if not name.startswith("_")]
