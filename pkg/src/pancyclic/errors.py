class PancyclicError(Exception):
    """Base class for construction and verification errors."""


class InvalidInput(PancyclicError, ValueError):
    """Malformed vertex, non-edge, or unsupported parameters."""


class LengthOutOfRange(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


class BipartiteNoTriangle(PancyclicError):
    pass


class ExtensionFailed(PancyclicError):
    pass


class BudgetExhausted(PancyclicError):
    pass


class StitchFailed(PancyclicError):
    """An internal invariant broke while assembling a cycle.  Always a bug."""
