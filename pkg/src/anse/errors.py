"""Exception types shared across the package."""


class AnseError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(AnseError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(InvalidInput):
    """Alphabet does not fit into the requested state table."""


class FormatError(AnseError):
    """Byte stream is not a recognizable container."""


class CorruptContainer(FormatError):
    """Container parsed structurally but an invariant does not hold."""


class TruncatedStream(AnseError):
    """Ran out of bits or bytes mid-decode."""


class NumericalError(AnseError):
    """An iterative computation failed to converge."""
