"""Exception hierarchy shared across the package.

Every error raised by sympredict derives from SympredictError so callers
(CLI, HTTP layer) can map failures to exit codes / status codes in one place.
"""


class SympredictError(Exception):
    """Base class for all package errors."""


class ParseError(SympredictError):
    """Raw dataset file is malformed. Carries the offending row when known."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"{message} (row {row})"
        super().__init__(message)


class ConfigError(SympredictError):
    """A parameter is outside its valid range."""


class EncodeError(SympredictError):
    """No symptom in the request could be mapped onto the vocabulary."""

    def __init__(self, message: str, unknown: list[str] | None = None):
        self.unknown = list(unknown or [])
        super().__init__(message)


class DimensionError(SympredictError):
    """Feature vector length does not match the model's dimensionality."""


class ConflictError(SympredictError):
    """Uniqueness violation (e.g. username already registered)."""


class ValidationError(SympredictError):
    """User-supplied value fails a validity rule (e.g. weak credential)."""


class AuthError(SympredictError):
    """Authentication failed. Deliberately carries no detail about why."""


class ForbiddenError(SympredictError):
    """Authenticated caller lacks the rights for this operation."""


class NotFoundError(SympredictError):
    """Referenced entity does not exist."""


class ImmutableError(SympredictError):
    """Attempted to change an append-only record."""
