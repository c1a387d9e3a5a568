"""Exception hierarchy shared by every module of the package."""


class ToeplitzError(ValueError):
    """Base class for all errors raised by :mod:`toeplitz_sne`."""


class ShapeError(ToeplitzError):
    pass


class MismatchedCorner(ToeplitzError):
    pass


class NonFiniteInput(ToeplitzError):
    pass


class KindMismatch(ToeplitzError):
    pass


class NumericalBreakdown(ToeplitzError):
    """Raised when the working-precision computation cannot continue."""


class ZeroPivot(NumericalBreakdown):
    pass


class DowndateBreakdown(NumericalBreakdown):
    """R^T R - x x^T lost positive definiteness at working precision.

    ``row`` is the 0-based row of R being formed and ``which`` names the
    carried vector whose downdate failed (``"u"`` or ``"zbar"``).
    """

    def __init__(self, message, row=None, which=None):
        super().__init__(message)
        self.row = row
        self.which = which


class SingularTriangular(NumericalBreakdown):
    pass


class NotPositiveDefinite(NumericalBreakdown):
    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class RankDeficient(NumericalBreakdown):
    pass
