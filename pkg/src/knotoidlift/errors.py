"""Exception hierarchy.

Every error carries a short machine-readable ``error_id`` which the CLI
prints on the diagnostic stream.
"""

from __future__ import annotations


class KnotoidError(Exception):
    """Base class for all validation errors raised by the package."""

    error_id = "KnotoidError"


class MalformedSyntax(KnotoidError):
    error_id = "MalformedSyntax"


class InvalidCode(KnotoidError):
    error_id = "InvalidCode"


class MixedAnnotation(KnotoidError):
    error_id = "MixedAnnotation"


class MalformedDiagram(KnotoidError):
    error_id = "MalformedDiagram"


class BadDegree(MalformedDiagram):
    error_id = "BadDegree"


class Disconnected(MalformedDiagram):
    error_id = "Disconnected"


class EulerViolation(MalformedDiagram):
    error_id = "EulerViolation"


class NotSingleStrand(MalformedDiagram):
    error_id = "NotSingleStrand"


class InvalidSite(KnotoidError):
    error_id = "InvalidSite"


class NoOuterFace(KnotoidError):
    error_id = "NoOuterFace"


class InvalidCutSystem(KnotoidError):
    error_id = "InvalidCutSystem"


class CrossingLimitExceeded(KnotoidError):
    error_id = "CrossingLimitExceeded"
