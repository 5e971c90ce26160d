"""Exception hierarchy shared by all modules."""


class SRAError(Exception):
    """Base class for errors raised by this package."""


class InvalidParameter(SRAError, ValueError):
    pass


class InvalidEta(InvalidParameter):
    pass


class InvalidRoot(InvalidParameter):
    pass


class FieldMismatch(SRAError, TypeError):
    pass


class UnsupportedOperation(SRAError):
    pass


class InstanceMismatch(SRAError, TypeError):
    pass


class DegreeExceeded(SRAError):
    pass


class NotStabilized(SRAError):
    """A truncated computation did not stabilize within its budget."""

    def __init__(self, message, dims=None):
        super().__init__(message)
        self.dims = dims or {}


class Inconclusive(SRAError):
    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data or {}


class Refused(SRAError):
    """Inputs violate a precondition of a verdict-producing operation."""


class InternalError(SRAError, RuntimeError):
    pass


class ParseError(SRAError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
