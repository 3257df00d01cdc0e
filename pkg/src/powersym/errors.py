class PowersymError(Exception):
    """Base class for all errors raised by powersym."""


class GraphFormatError(PowersymError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(PowersymError, ValueError):
    """Input is well formed but the requested quantity is undefined for it."""


class DegeneratePartitionError(DomainError):
    pass


class NotAnEliteError(DomainError):
    pass
