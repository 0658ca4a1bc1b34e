"""Polynomial solutions of the potentiality equation.

We look for ``psi(z) in GL_m(C[z])`` with

    z**2 psi'(z) = [U, psi(z)] - z V psi(z),

normalised by ``psi(0) = Id``. Writing ``psi = sum_k psi_k z**k`` this is the
forward recursion ``[U, psi_{k+1}] = (k Id + V) psi_k``. The isomorphism of
bundles is then ``phi(z) = psi(z) diag(exp(z conj(u_i)))``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import EXACT, Matrix, PolyMatrix, check_regular_diagonal, exact, sylvester_offdiag_solve
from .exceptions import ModeError, NonExactMode, NonzeroDiagonalV, ZeroN, ZeroX

RECURSION_NONTERMINATION = "recursion-nontermination"
INCONSISTENT_STEP = "inconsistent-step"

DEFAULT_MAX_DEGREE = 64


@dataclass(frozen=True)
class PolySolution:
    psi: PolyMatrix
    degree: int
    u: tuple
    ubar: tuple

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NoSolution:
    """No polynomial ``psi`` with ``psi(0) = Id`` exists (or none of degree <= the bound)."""

    reason: str
    step: int

    def __bool__(self):
        return False


def _require_exact(*ms: Matrix):
    for m in ms:
        if m.mode != EXACT:
            raise NonExactMode("potentiality computations are exact-only")


def solve_potentiality(u: Matrix, v: Matrix, max_degree: int = DEFAULT_MAX_DEGREE, strict: bool = True):
    """Run the forward recursion for ``psi`` with ``psi_0 = Id``.

    The off-diagonal part of ``psi_{k+1}`` is read off from
    ``(k Id + V) psi_k``; its diagonal part is forced by solvability of the
    next step, ``delta_{k+1} = -diag(V psi_{k+1}^off) / (k + 1)``. The
    recursion stops successfully at degree ``K`` once ``(K Id + V) psi_K``
    vanishes identically.

    Parameters
    ----------
    u : Matrix
        Diagonal, pairwise distinct entries.
    v : Matrix
        Zero diagonal.
    max_degree : int
        Largest degree tried before giving up.
    strict : bool
        If true a nonzero diagonal of ``V`` raises
        :class:`~cdvpotential.exceptions.NonzeroDiagonalV`; otherwise it is
        reported as ``NoSolution("inconsistent-step", 0)``.

    Returns
    -------
    PolySolution or NoSolution
    """
    _require_exact(u, v)
    diag_u = check_regular_diagonal(u)
    if not v.has_zero_diagonal():
        if strict:
            raise NonzeroDiagonalV("V must have zero diagonal")
        return NoSolution(INCONSISTENT_STEP, 0)
    m = u.dim
    ident = Matrix.identity(m)
    psi = [ident]
    k = 0
    while True:
        rhs = (ident * k + v) @ psi[k]
        if rhs.is_zero():
            break
        if k >= max_degree:
            return NoSolution(RECURSION_NONTERMINATION, k)
        if not rhs.has_zero_diagonal():  # pragma: no cover - excluded by the choice of delta
            return NoSolution(INCONSISTENT_STEP, k)
        off = sylvester_offdiag_solve(u, rhs.offdiag_part())
        delta = (v @ off).diag_part() * Fraction(-1, k + 1)
        psi.append(off + delta)
        k += 1
    poly = PolyMatrix(psi)
    if not verify_cgf(poly, u, v).is_zero():  # pragma: no cover
        raise AssertionError("recursion output does not solve the equation")
    det = poly.det()
    if len(det) != 1:  # pragma: no cover
        raise AssertionError("det psi is not a nonzero constant")
    return PolySolution(poly, k, tuple(diag_u), tuple(x.conjugate() for x in diag_u))


def verify_cgf(psi: PolyMatrix, u: Matrix, v: Matrix) -> PolyMatrix:
    """Residual ``z**2 psi' - [U, psi] + z V psi``; zero iff ``psi`` solves the equation."""
    _require_exact(u, v)
    if psi.mode != EXACT:
        raise NonExactMode("psi must be exact")
    comm = PolyMatrix([u @ c - c @ u for c in psi.coeffs], psi.dim, EXACT)
    return psi.derivative().shift(2) - comm + (v @ psi).shift(1)


def closed_form_psi_2x2(n: int, x) -> PolyMatrix:
    """Explicit two-dimensional solution for ``V = n [[0, 1], [1, 0]]`` and ``u_1 - u_2 = x``.

    For ``1 <= k <= |n|``::

        psi_k = prod_{j<k} (j**2 - n**2) / (k! x**k) * (Id - (k/n) A) D**k

    with ``A = [[0, 1], [1, 0]]`` and ``D = diag(-1, 1)``; higher coefficients vanish.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        n_frac = Fraction(n)
        if n_frac.denominator != 1:
            raise ValueError("n must be an integer")
        n = int(n_frac)
    if n == 0:
        raise ZeroN("n = 0 has psi = Id; use solve_potentiality")
    x = exact(x)
    if x == 0:
        raise ZeroX("u_1 - u_2 must be nonzero")
    a = Matrix([[0, 1], [1, 0]])
    d = Matrix.diag([-1, 1])
    ident = Matrix.identity(2)
    coeffs = [ident]
    for k in range(1, abs(n) + 1):
        num = 1
        for j in range(k):
            num *= j * j - n * n
        scale = exact(Fraction(num, math.factorial(k))) / x**k
        coeffs.append((ident - a * Fraction(k, n)) @ d**k * scale)
    return PolyMatrix(coeffs)


@dataclass(frozen=True)
class PhiFactorization:
    """``phi(z) = psi(z) diag(exp(z ubar_i))``, evaluated in floating point."""

    psi: PolyMatrix
    ubar: tuple

    def _exp_diag(self, z, sign=1):
        z = complex(z)
        return Matrix.diag([cmath.exp(sign * z * complex(exact(b).to_complex())) for b in self.ubar], mode="float")

    def __call__(self, z) -> Matrix:
        return self.psi(complex(z)) @ self._exp_diag(z)

    def strip_exponential(self, phi_value: Matrix, z) -> Matrix:
        """Recover ``psi(z) = phi(z) diag(exp(-z ubar_i))``."""
        if phi_value.mode != "float":
            raise ModeError("expected a float matrix")
        return phi_value @ self._exp_diag(z, sign=-1)


def assemble_phi(sol: PolySolution, ubar=None) -> PhiFactorization:
    """Pair ``psi`` with the exponential factor; ``ubar`` defaults to ``conj(u)``."""
    return PhiFactorization(sol.psi, tuple(exact(b) for b in (sol.ubar if ubar is None else ubar)))
