"""Exception hierarchy shared across the package."""


class KmaError(Exception):
    """Base class for all structured errors raised by this package."""


class InputError(KmaError):
    """Invalid user-supplied data (bad matrix, malformed flags, ...)."""
