"""Exact and floating-point matrix, polynomial and series arithmetic."""

from .linalg import (
    IntegerSpectrum,
    check_regular_diagonal,
    integer_semisimple_check,
    matrix_exp,
    sylvester_offdiag_solve,
    sylvester_solve,
)
from .matrix import Matrix
from .scalar import EXACT, FLOAT, GaussianRational, as_float, exact
from .series import PolyMatrix, SeriesMatrix, gauge_transform, series_invert

GaugeSeries = SeriesMatrix

__all__ = [
    "EXACT",
    "FLOAT",
    "GaugeSeries",
    "GaussianRational",
    "IntegerSpectrum",
    "Matrix",
    "PolyMatrix",
    "SeriesMatrix",
    "as_float",
    "check_regular_diagonal",
    "exact",
    "gauge_transform",
    "integer_semisimple_check",
    "matrix_exp",
    "series_invert",
    "sylvester_offdiag_solve",
    "sylvester_solve",
]
