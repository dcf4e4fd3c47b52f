"""Exception types shared across the package."""


class GarsideError(Exception):
    """Base class for all package errors."""


class ParseError(GarsideError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", column {column}" if column else "") + f": {message}"
        super().__init__(message)


class NotComplemented(GarsideError):
    """A generator pair has zero or several relations starting with it."""

    def __init__(self, pair, count):
        self.pair = pair
        self.count = count
        super().__init__(f"pair {pair} has {count} relations, expected exactly 1")


class ResourceLimit(GarsideError):
    """A configured resource bound was exceeded (possible divergence)."""

    def __init__(self, kind, limit):
        self.kind = kind
        self.limit = limit
        super().__init__(f"{kind} limit of {limit} exceeded")


class NonPositiveBraid(GarsideError):
    """Operation requires a braid word with positive crossings only."""


class NotVerified(GarsideError):
    """Operation requires a verified Garside structure."""
