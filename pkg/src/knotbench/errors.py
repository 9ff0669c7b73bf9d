"""Exception hierarchy shared by all modules."""


class KnotbenchError(Exception):
    """Base class for all errors raised by this package."""


class InputError(KnotbenchError):
    """Malformed input text, file, or data structure."""


class PreconditionError(KnotbenchError):
    """A documented operation precondition was violated."""


class BudgetExceededError(KnotbenchError):
    """A configured resource budget (degree, rank, refinement) ran out."""


class PossiblySingularError(KnotbenchError):
    """A certified signature could not separate a pivot from zero.

    For twisted signatures this signals that the evaluation point lies at
    (or indistinguishably near) a root of the Alexander polynomial.
    """
