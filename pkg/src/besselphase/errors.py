"""Exception and warning types raised by besselphase."""


class DomainError(ValueError):
    """Argument outside the domain of an expansion or oracle."""


class BesselOverflowError(OverflowError):
    """The assembled J or Y is not representable (huge imaginary part of the phase)."""


class PrecisionExhaustedError(ArithmeticError):
    """An oracle needed more working precision than it was allowed to use."""


class ConvergenceError(ArithmeticError):
    """A quadrature or series failed to converge to the requested tolerance."""


class IntegerOrderWarning(UserWarning):
    """Y was obtained by symmetric extrapolation around an integer order."""
