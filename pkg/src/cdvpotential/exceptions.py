"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`CDVError`,
and additionally from the closest builtin so that callers catching
``ValueError`` or ``ArithmeticError`` keep working.
"""


class CDVError(Exception):
    """Base class for all package errors."""


class ModeError(CDVError, TypeError):
    """Exact and float values were mixed, or the wrong mode was supplied."""


class FloatModeUnsupported(ModeError):
    pass


class NonExactMode(ModeError):
    pass


class NonRegularU(CDVError, ValueError):
    """Two diagonal entries of U coincide."""


class NonRegularLeading(NonRegularU):
    """Leading coefficient of a rank-one system is not regular semi-simple diagonal."""


class NonDiagonal(CDVError, ValueError):
    pass


class NonzeroDiagonal(CDVError, ValueError):
    pass


class NonzeroDiagonalV(NonzeroDiagonal):
    pass


class SingularConstantTerm(CDVError, ZeroDivisionError):
    pass


class SingularMatrix(CDVError, ZeroDivisionError):
    pass


class MatrixExpOverflow(CDVError, OverflowError):
    pass


class TruncationTooShort(CDVError, ValueError):
    pass


class ToleranceNotMet(CDVError, ArithmeticError):
    pass


class ZeroEta(CDVError, ValueError):
    pass


class MissingKappa(CDVError, ValueError):
    pass


class DimensionNotTwo(CDVError, ValueError):
    pass


class HypothesisViolated(CDVError, ValueError):
    pass


class ZeroN(CDVError, ValueError):
    pass


class ZeroX(CDVError, ValueError):
    pass
