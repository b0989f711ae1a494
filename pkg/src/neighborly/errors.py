"""Exception hierarchy shared by every module."""


class NeighborlyError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(NeighborlyError, ValueError):
    pass


class DegenerateConfigurationError(NeighborlyError, ValueError):
    pass


class RankDeficiencyError(NeighborlyError, ValueError):
    pass


class LoopContractionError(NeighborlyError, ValueError):
    pass


class BudgetExceededError(NeighborlyError):
    pass


class NotAPolytopeError(NeighborlyError, ValueError):
    pass


class GeneralPositionError(NeighborlyError, ValueError):
    pass


class PreconditionError(NeighborlyError, ValueError):
    pass


class ConstructionFailedError(NeighborlyError):
    """A construction produced an object violating its guaranteed property."""


class InternalConsistencyError(NeighborlyError, AssertionError):
    pass


class ParseError(NeighborlyError, ValueError):
    """Malformed text input; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
