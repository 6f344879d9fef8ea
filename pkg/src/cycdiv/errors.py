"""Shared exception types."""


class CycdivError(Exception):
    """Base class for all library errors."""


class DomainMismatchError(CycdivError):
    """Operands live in different coefficient domains or algebras."""


class PrecisionError(CycdivError):
    """A truncated value does not carry enough information for the request."""


class ValueGroupError(CycdivError):
    """An exponent does not belong to the configured value group."""


class ZeroDivisorError(CycdivError):
    """A linear solve hit a singular system; carries a kernel vector."""

    def __init__(self, message, kernel=None):
        super().__init__(message)
        self.kernel = kernel
