"""Exception hierarchy shared by all partlat modules."""


class PartlatError(Exception):
    """Base class for every error raised by partlat."""


class InvalidArgument(PartlatError, ValueError):
    pass


class ShapeError(PartlatError, ValueError):
    """Operands live in different lattices (size or exponent mismatch)."""


class ParseError(PartlatError, ValueError):
    """Malformed partition, tuple, shape or term text."""

    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class ProtocolError(PartlatError):
    """A peer sent a line that does not fit the session state."""
