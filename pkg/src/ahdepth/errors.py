"""Exception hierarchy for :mod:`ahdepth`."""


class AHDError(Exception):
    """Base class for all package errors."""


class ZeroVector(AHDError, ValueError):
    pass


class DimensionMismatch(AHDError, ValueError):
    pass


class AntipodalPair(AHDError, ValueError):
    pass


class GenericityFailure(AHDError, RuntimeError):
    pass


class CrossValidationError(AHDError, RuntimeError):
    """Two independent depth routes disagreed."""


class EmptyRegion(AHDError, ValueError):
    pass


class UnsupportedModel(AHDError, ValueError):
    pass


class AlphaOutOfRange(AHDError, ValueError):
    pass


class ParseError(AHDError, ValueError):
    def __init__(self, message, row=None, col=None):
        loc = ""
        if row is not None:
            loc = f" (row {row}" + (f", col {col})" if col is not None else ")")
        super().__init__(message + loc)
        self.row = row
        self.col = col


class NonUnitRow(ParseError):
    pass
