"""Exception types raised by the toolkit."""


class DiskargError(Exception):
    """Base class for all errors raised by :mod:`diskarg`."""


class AtZeroError(DiskargError, ValueError):
    """The evaluation point coincides with a zero of the function."""


class DegenerateDenominatorError(DiskargError, ZeroDivisionError):
    pass


class TailBoundExceeded(DiskargError):
    """The neglected tail of an infinite product cannot be certified.

    Attributes
    ----------
    bound : float
        The best available bound on the neglected part (``inf`` when the
        tail descriptor admits none at this point).
    tol : float
        The requested tolerance.
    """

    def __init__(self, message, bound=float("inf"), tol=float("nan")):
        super().__init__(message)
        self.bound = bound
        self.tol = tol


class QuadratureError(DiskargError):
    """Adaptive quadrature hit its refinement cap above the tolerance.

    The partial result is kept on ``value``/``error_estimate`` so callers
    can log it.
    """

    def __init__(self, message, value=float("nan"), error_estimate=float("inf"), nodes_used=0):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.nodes_used = nodes_used
