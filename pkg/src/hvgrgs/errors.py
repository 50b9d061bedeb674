"""Exception types shared across the package."""


class HvgRgsError(ValueError):
    """Base class for all domain errors raised by this package."""


class EmptyWordError(HvgRgsError):
    """Raised when a word of length zero is offered as a growth sequence."""


class GrowthViolationError(HvgRgsError):
    """A letter breaks the growth rule; carries the 1-based position."""

    def __init__(self, position: int, message: str | None = None):
        self.position = position
        super().__init__(message or f"growth rule violated at position {position}")


class NotStandardFormError(HvgRgsError):
    """A block list is not a standard-form partition of 1..n."""


class NodeOutOfRangeError(HvgRgsError):
    """A node index lies outside 1..n."""


class InvalidPairError(HvgRgsError):
    """A node pair does not satisfy 1 <= i < j <= n."""


class TooLargeError(HvgRgsError):
    """An exhaustive computation was requested beyond the enumeration guard."""
