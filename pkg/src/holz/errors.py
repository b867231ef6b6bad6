"""Exception hierarchy shared by every codec in the package."""


class HolzError(Exception):
    """Base class for all errors raised by :mod:`holz`."""


class InvalidArgumentError(HolzError, ValueError):
    """A caller passed a value outside an operation's domain."""


class CorruptInputError(HolzError, ValueError):
    """Encoded data is inconsistent and cannot be decoded."""


class DecodeError(CorruptInputError):
    """A bit stream ended in the middle of a code word."""


class UnsupportedFormatError(HolzError, ValueError):
    """Container magic, version or method is not recognised."""
