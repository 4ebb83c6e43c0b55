class MomentsError(ValueError):
    """Base class for all errors raised by the moment engine."""


class InvalidWordLength(MomentsError):
    """Raised when a ground set or word has odd length where pairs are needed."""


class LimitExceeded(MomentsError):
    """Raised when a request exceeds a configured enumeration limit."""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what}={value} exceeds configured limit {limit} (use --unsafe-limits to override)")


class LengthMismatch(MomentsError):
    """Raised when a partition and a word do not have the same length."""


class NotAdapted(MomentsError):
    """Raised when a partition is not adapted to a word in the requested mode."""


class NoOuterBlock(MomentsError):
    """Raised when a block has only the imaginary block as nearest outer block."""


class WordSyntaxError(MomentsError):
    """Raised when a star word cannot be parsed."""


class ProfileError(MomentsError):
    """Raised for malformed variance profiles."""
