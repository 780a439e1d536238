"""Exception hierarchy shared by the library, the CLI and the HTTP routes."""


class QFactError(Exception):
    """Base class for every error raised by this package."""


class InputError(QFactError, ValueError):
    """The caller passed something that violates a documented precondition."""


class ResourceLimitError(QFactError):
    """A configured bound (word length, rank, peak count) was exceeded."""


class InvariantViolation(QFactError, RuntimeError):
    """An internal invariant failed; this is a bug or a counterexample."""
