"""Exception types shared across the package."""


class BlottoError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(BlottoError, ValueError):
    """An argument violates an operation's precondition."""


class Unsupported(BlottoError, ValueError):
    """A well-formed request outside the modelled game family."""


class FormatError(BlottoError, ValueError):
    """A serialized game or strategy could not be parsed.

    ``context`` names the offending line or field so the message points
    at the problem in the file.
    """

    def __init__(self, message: str, context: str | None = None):
        self.context = context
        if context:
            message = f"{context}: {message}"
        super().__init__(message)


class InternalError(BlottoError, RuntimeError):
    """An invariant that should be impossible to break was broken."""
