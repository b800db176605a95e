"""Exception hierarchy shared by every module in the package."""


class FtspareError(Exception):
    """Base class for all errors raised by ftspare."""


class InvalidEdge(FtspareError, ValueError):
    pass


class InvalidVertex(FtspareError, ValueError):
    pass


class ParseError(FtspareError, ValueError):
    pass


class DegreeMismatch(FtspareError, ValueError):
    pass


class InvalidPoint(FtspareError, ValueError):
    pass


class InvalidTuple(FtspareError, ValueError):
    pass


class InvalidRange(FtspareError, ValueError):
    pass


class OrderMismatch(FtspareError, ValueError):
    pass


class SizeMismatch(FtspareError, ValueError):
    pass


class OrbitTooLarge(FtspareError, RuntimeError):
    """An orbit closure grew past the configured element cap."""


class UniverseTooLarge(FtspareError, RuntimeError):
    """The acted-upon universe is larger than the configured element cap."""
