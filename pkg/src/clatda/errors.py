"""Exception hierarchy shared by the library and the CLI."""


class ClatdaError(Exception):
    """Base class for all errors raised by clatda."""


class MalformedInputError(ClatdaError, ValueError):
    """Input data has the wrong shape, ragged rows or non-finite values."""


class DomainError(ClatdaError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceLimitError(ClatdaError, RuntimeError):
    """A configured size budget would be exceeded."""

    def __init__(self, message: str, budget: int | None = None):
        super().__init__(message)
        self.budget = budget


class NoSolutionError(ClatdaError):
    """No grid size realizes the requested reduction rate."""

    def __init__(self, message: str, closest_rate: float, closest_delta: float):
        super().__init__(message)
        self.closest_rate = closest_rate
        self.closest_delta = closest_delta
