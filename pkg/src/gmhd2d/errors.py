"""Exception types raised across the package."""


class GmhdError(Exception):
    """Base class for all package errors."""


class NonzeroMean(GmhdError, ValueError):
    """A negative-order operator was applied to a field with a mean component."""


class NotDivergenceFree(GmhdError, ValueError):
    pass


class NonFiniteState(GmhdError, FloatingPointError):
    pass


class RegimeMismatch(GmhdError, ValueError):
    pass


class InsufficientSamples(GmhdError, ValueError):
    pass


class OddP(GmhdError, ValueError):
    pass


class ParameterOutOfRange(GmhdError, ValueError):
    pass


class ZeroDenominator(GmhdError, ZeroDivisionError):
    pass


class ExponentMismatch(GmhdError, ValueError):
    pass


class BadSpec(GmhdError, ValueError):
    """Invalid initial-condition or run configuration."""


class CorruptHeader(GmhdError, ValueError):
    pass


class VersionMismatch(GmhdError, ValueError):
    pass
