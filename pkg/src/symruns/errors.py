"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid arguments or data (bad sizes, non-finite values, bad levels)."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to produce a usable answer."""


class TylerConvergenceError(NumericalError):
    """Tyler's fixed-point iteration did not converge.

    Carries the last iterate and its fixed-point residual so callers can
    decide whether the estimate is still usable.
    """

    def __init__(self, message, last=None, residual=None):
        super().__init__(message)
        self.last = last
        self.residual = residual
