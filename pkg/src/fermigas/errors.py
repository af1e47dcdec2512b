"""Exception hierarchy shared by all modules."""


class FermiGasError(Exception):
    """Base class for errors raised by this package."""


class DomainError(FermiGasError, ValueError):
    """Argument outside the domain where a quantity is defined or reliable."""


class ConvergenceError(FermiGasError, ArithmeticError):
    """A series could not reach its error target within the iteration cap."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature did not converge."""


class TruncationError(FermiGasError, ValueError):
    """A finite spectrum is too short to guarantee a complete count."""


class SaddleInvalid(FermiGasError, ArithmeticError):
    """The Hessian determinant at a stationary point is not positive."""


class NoConvergence(FermiGasError, ArithmeticError):
    """The saddle-point iteration failed.

    The best iterate found is kept on ``result`` (a ``SaddleResult`` with
    ``converged=False``) so callers can still inspect residuals.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
