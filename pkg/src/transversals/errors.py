"""Exception hierarchy shared by every module of the package."""


class TransversalError(ValueError):
    """Base class for all errors raised by this package."""


class EmptyInput(TransversalError):
    pass


class DimensionMismatch(TransversalError):
    pass


class RankTooHigh(TransversalError):
    pass


class MalformedInstance(TransversalError):
    pass


class BadTarget(TransversalError):
    pass


class TooFewPoints(TransversalError):
    pass


class InvalidWitness(TransversalError):
    pass


class PreconditionViolated(TransversalError):
    pass


class SetTooLarge(TransversalError):
    pass


class NoOriginSet(TransversalError):
    pass


class BadK(TransversalError):
    pass


class BudgetExceeded(TransversalError):
    pass


class EmptySet(TransversalError):
    """A family contains an empty set where a nonempty one is required."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"set {index} is empty")


class FlatMissesSet(TransversalError):
    """A flat does not meet the convex hull of one of the sets."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"flat misses the hull of set {index}")
