"""Exception hierarchy. Every error raised by the package derives from CoherenceError."""


class CoherenceError(ValueError):
    pass


class NotHermitian(CoherenceError):
    pass


class NoConvergence(CoherenceError, ArithmeticError):
    pass


class NegativeEigenvalue(CoherenceError):
    pass


class WrongDimension(CoherenceError):
    pass


class DimensionMismatch(CoherenceError):
    pass


class InvalidState(CoherenceError):
    """Raised when a matrix fails density-matrix validation.

    The ``diagnostics`` attribute carries the list produced by
    :func:`cohorder.states.validate`.
    """

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


class AlphaOutOfRange(CoherenceError):
    pass


class SupportMismatch(CoherenceError):
    pass


class NotIncoherentChannel(CoherenceError):
    pass


class IncompleteKraus(CoherenceError):
    pass


class ParamOutOfRange(CoherenceError):
    pass


class SumMismatch(CoherenceError):
    pass


class UnknownFigure(CoherenceError):
    pass
