"""Potentiality of semi-simple Tate CDV-structures, made computable.

Subpackages and modules:

* :mod:`~cdvpotential.algebra` exact Gaussian-rational and float matrices, polynomials and series
* :mod:`~cdvpotential.frobenius` point data of a semi-simple Frobenius manifold
* :mod:`~cdvpotential.formal` formal reduction of rank-one systems
* :mod:`~cdvpotential.monodromy` Levelt reduction and numeric monodromy at the regular singularity
* :mod:`~cdvpotential.potentiality` polynomial solutions of the potentiality equation
"""

from .algebra import EXACT, FLOAT, GaussianRational, Matrix, PolyMatrix, SeriesMatrix, exact
from .formal import RankOneSystem, exp_gauge_reduce, formal_reduce, gauge_residual
from .frobenius import (
    FrobeniusPoint,
    dim2_criterion,
    q_from_connection_forms,
    tate_family_2d,
    tate_structure_check,
    v_from_potential,
)
from .monodromy import (
    equivalence_verdict,
    levelt_reduce,
    monodromy_from_residue,
    monodromy_numeric,
    pullback_to_infinity,
)
from .potentiality import NoSolution, PolySolution, assemble_phi, closed_form_psi_2x2, solve_potentiality, verify_cgf

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "FrobeniusPoint",
    "GaussianRational",
    "Matrix",
    "NoSolution",
    "PolyMatrix",
    "PolySolution",
    "RankOneSystem",
    "SeriesMatrix",
    "assemble_phi",
    "closed_form_psi_2x2",
    "dim2_criterion",
    "equivalence_verdict",
    "exact",
    "exp_gauge_reduce",
    "formal_reduce",
    "gauge_residual",
    "levelt_reduce",
    "monodromy_from_residue",
    "monodromy_numeric",
    "pullback_to_infinity",
    "q_from_connection_forms",
    "solve_potentiality",
    "tate_family_2d",
    "tate_structure_check",
    "v_from_potential",
    "verify_cgf",
]
