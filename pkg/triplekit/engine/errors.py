"""
Exception hierarchy for the engine.

Everything derives from ValueError so callers that only know about
ValueError keep working.
"""


class TripleKitError(ValueError):
    """Base class for all engine errors."""


class ShapeError(TripleKitError):
    """Elements or data do not match the factor they are used with."""


class NotATripotentError(TripleKitError):
    """An input required to be a tripotent is not one."""


class DegeneracyError(TripleKitError):
    """The spectrum of L(e,e) drifted off the {0, 1/2, 1} grid."""


class PreconditionError(TripleKitError):
    """A documented precondition of an operation was violated."""


class StructureError(TripleKitError):
    """A step of a reconstruction failed for the supplied bijection.

    The message names the step that broke.
    """


class RoutingError(StructureError):
    """A tripotent supported in one summand was sent across several target summands."""


class BranchError(TripleKitError):
    """The phase map sends i outside {i, -i}."""


class ClassificationError(TripleKitError):
    """No standard form fits a square-factor automorphism."""


class OracleLookupError(TripleKitError):
    """A table-backed oracle has no entry for the requested tripotent."""
