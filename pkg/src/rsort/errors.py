"""Exception hierarchy shared by every rsort module."""


class RSortError(Exception):
    """Base class for user-facing errors (CLI exit code 1)."""


class ParseError(RSortError, ValueError):
    pass


class NegativeValue(RSortError, ValueError):
    pass


class NonFinite(RSortError, ValueError):
    pass


class CellBudgetExceeded(RSortError):
    pass


class SymbolOutOfAlphabet(RSortError, ValueError):
    pass


class InvalidKey(RSortError, ValueError):
    pass


class SpecMismatch(RSortError, ValueError):
    pass


class BufferTooSmall(RSortError):
    pass


class RangeExceeded(RSortError, ValueError):
    pass


class OutOfRange(RSortError, ValueError):
    pass


class InvalidRange(RSortError, ValueError):
    pass


class InsufficientData(RSortError):
    pass
