"""Monodromy of ``z**2 dY/dz = (U - z V) Y`` around ``z = 0``.

Two independent routes are provided.

*Levelt route (exact).* In ``w = 1/z`` the system reads
``w dY/dw = (V - w U) Y`` and has a simple pole at ``w = 0``. A meromorphic
gauge made of constant block-diagonalisations, shearings
``diag(w Id_s, Id)`` and a final holomorphic series brings it to the constant
system ``w dY/dw = R Y``; the monodromy counterclockwise in ``w`` is
``exp(2 pi i R)``, and it is the identity iff ``R`` is semi-simple with
integer eigenvalues.

*Numeric route.* Transport of a fundamental solution along ``|z| = r``
counterclockwise with an adaptive Dormand-Prince 8(5,3) integrator.

A counterclockwise loop in ``z`` is clockwise in ``w``, so in a common basis
the two matrices are mutually inverse; :class:`LeveltReduction` can evaluate
the fundamental solution at the base point to make that comparison literal.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .algebra import (
    EXACT,
    FLOAT,
    Matrix,
    PolyMatrix,
    SeriesMatrix,
    check_regular_diagonal,
    integer_semisimple_check,
    matrix_exp,
    sylvester_solve,
)
from .algebra import univariate as uv
from .algebra.matrix import from_columns
from .exceptions import NonExactMode, ToleranceNotMet, TruncationTooShort

IDENTITY_THRESHOLD = 1e-6
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class RegularSingularSystem:
    """``w dY/dw = B(w) Y`` with ``B`` holomorphic at ``w = 0``."""

    B: PolyMatrix | SeriesMatrix

    @property
    def residue(self) -> Matrix:
        return self.B[0]

    @property
    def dim(self) -> int:
        return self.B.dim


def pullback_to_infinity(u: Matrix, v: Matrix) -> RegularSingularSystem:
    """Rewrite ``dY/dz = (U/z**2 - V/z) Y`` in ``w = 1/z``: ``w dY/dw = (V - w U) Y``."""
    return RegularSingularSystem(PolyMatrix([v, -u], u.dim, u.mode))


@dataclass(frozen=True)
class ConstantStep:
    matrix: Matrix


@dataclass(frozen=True)
class ShearStep:
    """``diag(w Id_size, Id_{m - size})``."""

    size: int


@dataclass(frozen=True)
class LeveltReduction:
    """Result of :func:`levelt_reduce`.

    ``steps`` compose left to right: ``Y = T_1 S_1(w) T_2 S_2(w) ... P(w) w**R``.
    ``final`` is the system before the holomorphic tail ``P`` (constant term
    ``R``), kept to extend ``P`` numerically.
    """

    residue: Matrix
    steps: tuple
    tail: SeriesMatrix
    final_coeffs: tuple
    final_order: int | None = None
    shears: int = 0

    def tail_float(self, w: complex, rtol: float = 1e-17, max_terms: int = 2000) -> np.ndarray:
        """Sum the holomorphic tail at ``w`` in floating point.

        For polynomial input the recursion is continued past the exact
        truncation until the terms are negligible; otherwise the exact
        partial sum is used.
        """
        if self.final_order is not None:
            return self.tail.partial_sum(complex(w)).to_numpy()
        r = self.residue.to_numpy()
        b = [c.to_numpy() for c in self.final_coeffs]
        m = r.shape[0]
        p = [np.eye(m, dtype=complex)]
        total = np.eye(m, dtype=complex)
        wk = 1.0 + 0j
        small = 0
        for k in range(1, max_terms):
            rhs = np.zeros((m, m), dtype=complex)
            for j in range(1, min(k, len(b) - 1) + 1):
                rhs -= b[j] @ p[k - j]
            pk = _solve_sylvester_float(r - k * np.eye(m), r, rhs)
            p.append(pk)
            wk *= w
            term = pk * wk
            total += term
            if np.linalg.norm(term) <= rtol * max(np.linalg.norm(total), 1.0):
                small += 1
                if small >= 3 and k > len(b):
                    return total
            else:
                small = 0
        raise ToleranceNotMet("holomorphic tail did not converge")

    def gauge_at(self, w: complex) -> np.ndarray:
        """Float value of the full meromorphic gauge at ``w != 0``."""
        m = self.residue.dim
        g = np.eye(m, dtype=complex)
        for step in self.steps:
            if isinstance(step, ConstantStep):
                g = g @ step.matrix.to_numpy()
            else:
                g = g @ np.diag([w] * step.size + [1.0] * (m - step.size))
        return g @ self.tail_float(w)

    def fundamental_matrix(self, w: float) -> np.ndarray:
        """``G(w) w**R`` for real ``w > 0`` (principal branch of the logarithm)."""
        if not (isinstance(w, (int, float)) and w > 0):
            raise ValueError("base point must be a positive real number")
        log_w = math.log(w)
        wr = matrix_exp((self.residue.to_float() * log_w)).to_numpy()
        return self.gauge_at(complex(w)) @ wr


def _solve_sylvester_float(a, b, c):
    import scipy.linalg

    return scipy.linalg.solve_sylvester(a, -b, c)


def _nonbottom_factor(p: tuple) -> tuple:
    """Square-free polynomial whose roots are the eigenvalues ``l`` with ``l - k`` also a root, ``k >= 1``."""
    bound = uv.root_bound(p)
    kmax = int(math.floor(2 * bound)) + 1
    g = uv.trim([1])
    for k in range(1, kmax + 1):
        q = uv.gcd(p, uv.shift_argument(p, -k))
        if len(q) > 1:
            g = uv.mul(g, q)
    return uv.squarefree_part(g)


def _shear(coeffs: list, order: int | None, s: int) -> tuple[list, int | None]:
    """Apply ``Y = diag(w Id_s, Id) X``; requires the (1,2) block of ``B_0`` to vanish."""
    m = coeffs[0].dim
    n_out = len(coeffs) + 1
    zero = coeffs[0][0, 0] * 0

    def entry(k, i, j):
        return coeffs[k][i, j] if 0 <= k < len(coeffs) else zero

    new = []
    for k in range(n_out):
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                top, left = i < s, j < s
                if top and not left:
                    x = entry(k + 1, i, j)
                elif left and not top:
                    x = entry(k - 1, i, j)
                else:
                    x = entry(k, i, j)
                if k == 0 and i == j and top:
                    x = x - 1
                row.append(x)
            rows.append(row)
        new.append(Matrix(rows, mode=EXACT))
    if order is None:
        while len(new) > 1 and new[-1].is_zero():
            new.pop()
        return new, None
    return new[:order], order - 1


def levelt_reduce(system: RegularSingularSystem, order: int | None = None) -> LeveltReduction:
    """Reduce a simple-pole system to a constant residue.

    While two eigenvalues of ``B_0`` differ by a positive integer, split
    ``C^m`` exactly into the generalised eigenspace of the eigenvalues that
    are not the lowest of their integer class (roots of
    ``gcd(p(x), p(x - k))``) and its complement, then shear that block down
    by one. Each round lowers every such eigenvalue by one, so the number of
    rounds equals the largest integer gap. Once non-resonant, the holomorphic
    tail is solved order by order from ``(R - k) P_k - P_k R = -sum B_j P_{k-j}``.

    Parameters
    ----------
    system : RegularSingularSystem
        Exact coefficients. A PolyMatrix is known to all orders; a
        SeriesMatrix loses one order per shearing.
    order : int, optional
        Working truncation order. For series input defaults to the series
        order; for polynomial input it is the length of the exact tail
        (default ``2 m + 4``).

    Raises
    ------
    TruncationTooShort
        If shearings consume more orders than the series provides.
    """
    b_in = system.B
    if b_in.mode != EXACT:
        raise NonExactMode("levelt_reduce requires exact coefficients")
    m = b_in.dim
    if isinstance(b_in, PolyMatrix):
        coeffs = list(b_in.coeffs) or [Matrix.zeros(m)]
        cur_order = None
        tail_order = 2 * m + 4 if order is None else order
    else:
        cur_order = b_in.order if order is None else min(order, b_in.order)
        coeffs = list(b_in.coeffs[: cur_order + 1])
        tail_order = None
    steps = []
    shears = 0
    while True:
        b0 = coeffs[0]
        p = uv.charpoly(b0)
        g = _nonbottom_factor(p)
        if len(g) <= 1:
            break
        h, rem = uv.divmod_poly(uv.squarefree_part(p), g)
        assert not rem
        w1 = uv.evaluate_matrix(g, b0) ** m
        w2 = uv.evaluate_matrix(h, b0) ** m
        basis1, basis2 = w1.nullspace(), w2.nullspace()
        assert len(basis1) + len(basis2) == m
        t = from_columns(basis1 + basis2)
        tinv = t.inv()
        coeffs = [tinv @ c @ t for c in coeffs]
        steps.append(ConstantStep(t))
        if cur_order is not None and cur_order < 1:
            raise TruncationTooShort("resonance handling needs coefficients beyond the truncation order")
        coeffs, cur_order = _shear(coeffs, cur_order, len(basis1))
        steps.append(ShearStep(len(basis1)))
        shears += 1
    r = coeffs[0]
    n_tail = tail_order if cur_order is None else cur_order
    tail = [Matrix.identity(m)]
    zero = Matrix.zeros(m)
    ident = Matrix.identity(m)
    for k in range(1, n_tail + 1):
        rhs = zero
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            rhs = rhs - coeffs[j] @ tail[k - j]
        tail.append(sylvester_solve(r - ident * k, r, rhs))
    return LeveltReduction(
        residue=r,
        steps=tuple(steps),
        tail=SeriesMatrix(tail, n_tail, m, EXACT),
        final_coeffs=tuple(coeffs),
        final_order=cur_order,
        shears=shears,
    )


def monodromy_from_residue(b: Matrix) -> Matrix:
    """``exp(2 pi i B)``: monodromy of ``w dY/dw = B Y`` counterclockwise in ``w``."""
    return matrix_exp(b.to_float() * (2j * math.pi))


@dataclass(frozen=True)
class NumericMonodromy:
    """Transported fundamental solution ``M = Y(after) Y(before)^{-1}`` with ``Y(before) = Id``.

    ``defect`` is the relative error of ``det M`` against the exact value
    ``exp(-2 pi i tr V)``.
    """

    matrix: Matrix
    defect: float
    nfev: int
    radius: float
    tol: float

    def distance_to_identity(self) -> float:
        return (self.matrix - Matrix.identity(self.matrix.dim, FLOAT)).norm()


def monodromy_numeric(u: Matrix, v: Matrix, radius: float = 1.0, tol: float = DEFAULT_TOL) -> NumericMonodromy:
    """Monodromy of ``dY/dz = (U/z**2 - V/z) Y`` along ``|z| = radius``, counterclockwise.

    In the angle ``t`` with ``z = radius * exp(i t)`` the system becomes
    ``dY/dt = i (U / z - V) Y``, integrated from ``t = 0`` to ``2 pi``.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    un = u.to_float().to_numpy()
    vn = v.to_float().to_numpy()
    m = un.shape[0]

    def rhs(t, y):
        z = radius * cmath.exp(1j * t)
        a = 1j * (un / z - vn)
        return (a @ y.reshape(m, m)).ravel()

    y0 = np.eye(m, dtype=complex).ravel()
    sol = solve_ivp(rhs, (0.0, 2 * math.pi), y0, method="DOP853", rtol=tol, atol=tol * 1e-2)
    if not sol.success:
        raise ToleranceNotMet(f"integrator failed: {sol.message}")
    mono = sol.y[:, -1].reshape(m, m)
    if not np.all(np.isfinite(mono)):
        raise ToleranceNotMet("integration produced non-finite values")
    expected_det = cmath.exp(-2j * math.pi * complex(np.trace(vn)))
    defect = abs(np.linalg.det(mono) - expected_det) / abs(expected_det)
    return NumericMonodromy(Matrix.from_numpy(mono), float(defect), int(sol.nfev), float(radius), float(tol))


def route_discrepancy(reduction: LeveltReduction, numeric: NumericMonodromy) -> float:
    """Frobenius distance between ``exp(2 pi i R)`` and the numeric monodromy in the Levelt basis.

    The numeric matrix ``M`` (counterclockwise in ``z``) equals
    ``F exp(-2 pi i R) F^{-1}`` with ``F`` the Levelt fundamental matrix at
    ``w = 1 / radius``, so ``F^{-1} M^{-1} F`` is compared with ``exp(2 pi i R)``.
    """
    f = reduction.fundamental_matrix(1.0 / numeric.radius)
    mono = numeric.matrix.to_numpy()
    moved = np.linalg.solve(f, np.linalg.solve(mono, f))
    target = monodromy_from_residue(reduction.residue).to_numpy()
    return float(np.linalg.norm(moved - target))


@dataclass(frozen=True)
class Verdicts:
    necessary_integrality: bool
    diag_zero: bool
    monodromy_identity: bool
    holomorphic_equivalent: bool
    meromorphic_equivalent: bool


@dataclass(frozen=True)
class MonodromyReport:
    levelt_residue: Matrix
    monodromy_exact: Matrix
    monodromy_numeric: Matrix
    verdicts: Verdicts
    diagnostics: dict = field(default_factory=dict)


def equivalence_verdict(
    u: Matrix,
    v: Matrix,
    radius: float = 1.0,
    tol: float = DEFAULT_TOL,
    order: int | None = None,
    numeric: bool = True,
) -> MonodromyReport:
    """Decide whether ``(U - z V) dz/z**2`` is meromorphically / holomorphically equivalent to ``U dz/z**2``.

    The exact Levelt route decides ``monodromy_identity``; the numeric
    transport is a cross-check whose distances land in ``diagnostics``.
    """
    if u.mode != EXACT or v.mode != EXACT:
        raise NonExactMode("equivalence_verdict requires exact U and V")
    check_regular_diagonal(u)
    spectrum = integer_semisimple_check(v)
    diag = v.diagonal()
    diag_integral = all(x.is_integer() for x in diag)
    diag_zero = all(x == 0 for x in diag)
    reduction = levelt_reduce(pullback_to_infinity(u, v), order)
    residue_check = integer_semisimple_check(reduction.residue)
    identity = residue_check.holds
    mono_exact = monodromy_from_residue(reduction.residue)
    diagnostics = {
        "v_semisimple": spectrum.semisimple,
        "v_integer_eigenvalues": spectrum.integer_eigenvalues,
        "v_eigenvalues": list(spectrum.eigenvalues) if spectrum.eigenvalues else None,
        "diag_integral": diag_integral,
        "shearings": reduction.shears,
        "tail_order": reduction.tail.order,
    }
    mono_num = Matrix.zeros(u.dim, FLOAT)
    if numeric:
        num = monodromy_numeric(u, v, radius, tol)
        mono_num = num.matrix
        dist = num.distance_to_identity()
        disc = route_discrepancy(reduction, num)
        diagnostics.update(
            numeric_distance_to_identity=dist,
            numeric_identity=dist < IDENTITY_THRESHOLD,
            route_discrepancy=disc,
            routes_agree=(dist < IDENTITY_THRESHOLD) == identity and disc < IDENTITY_THRESHOLD,
            det_defect=num.defect,
            radius=radius,
            tolerance=tol,
            function_evaluations=num.nfev,
        )
    verdicts = Verdicts(
        necessary_integrality=spectrum.holds and diag_integral,
        diag_zero=diag_zero,
        monodromy_identity=identity,
        holomorphic_equivalent=identity and diag_zero,
        meromorphic_equivalent=identity,
    )
    return MonodromyReport(reduction.residue, mono_exact, mono_num, verdicts, diagnostics)
