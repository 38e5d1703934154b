"""Exception types raised across the package."""


class TorsionSpinError(Exception):
    """Base class for all package errors."""


class DivisionByZero(TorsionSpinError, ZeroDivisionError):
    pass


class TowerOverflow(TorsionSpinError):
    """More radicals would be adjoined than the configured cap allows."""


class DimMismatch(TorsionSpinError, ValueError):
    pass


class NotAVector(TorsionSpinError, ValueError):
    pass


class NotA3Form(TorsionSpinError, ValueError):
    pass


class NotSkew(TorsionSpinError, ValueError):
    pass


class UnsupportedDim(TorsionSpinError, ValueError):
    pass


class NotNaturallyReductive(TorsionSpinError, ValueError):
    pass


class NotInvariant(TorsionSpinError, ValueError):
    pass


class ShapeMismatch(TorsionSpinError, ValueError):
    pass


class FormulaModeUnsupported(TorsionSpinError):
    """The operation needs an explicit space, but the context is formula-only."""


class SpectrumNotResolved(TorsionSpinError):
    pass


class NotTEigenspinor(TorsionSpinError, ValueError):
    pass


class PreconditionFailed(TorsionSpinError):
    pass


class DegenerateDimension(TorsionSpinError, ValueError):
    pass


class DimOutOfRange(TorsionSpinError, ValueError):
    pass


class ParseError(TorsionSpinError, ValueError):
    pass


class ValidationError(TorsionSpinError, ValueError):
    pass


class UnknownTarget(TorsionSpinError, LookupError):
    pass
