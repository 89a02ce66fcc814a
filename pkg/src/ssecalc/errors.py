"""Exception hierarchy shared by all modules."""


class SseError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SseError):
    """Matrix shapes are not conformable for the requested operation."""


class InvalidMatrixError(SseError):
    """Matrix data violates an invariant (negative entry, bad shape, ...)."""


class InvalidIndexSetError(SseError):
    """Index set is out of range, unsorted, or empty where forbidden."""


class ShiftMismatchError(SseError):
    """Domain/codomain shifts of codes do not line up."""


class InvalidCodeError(SseError):
    """Block code data violates an invariant (partial table, bad image, ...)."""


class NotElementaryError(SseError):
    """A code was required to be elementary (window {0,1} / inverse {-1,0})."""


class InvalidEdgeError(SseError):
    """Matrix pair does not define a valid (elementary) strong shift equivalence."""


class MissingInverseError(SseError):
    """Operation requires a code with a stored, verified inverse."""


class VerificationError(SseError):
    """An identity that is mathematically guaranteed failed; indicates a bug."""


class ResourceBoundError(SseError):
    """A configurable enumeration cap was exceeded; results were not truncated."""


class IterationBoundError(SseError):
    """An iterative normalization exceeded its termination bound."""


class GStarOverflowError(SseError):
    """A group-ring product has a coefficient >= 2 and left the {0,1} subset."""


class EmptyCoreError(SseError):
    """A matrix core (indices on bi-infinite paths) is empty where one is required."""
