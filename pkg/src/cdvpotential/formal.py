"""Formal reduction of Poincare rank one systems ``z**2 dY/dz = A(z) Y``.

Convention, used throughout the package: a gauge ``P`` acts by ``Y = P X``,
so that ``X`` solves the system with matrix ``P^{-1} A P - z**2 P^{-1} P'``.
A gauge ``P`` carrying a normal form ``L`` to ``A`` therefore satisfies

    z**2 P'(z) = A(z) P(z) - P(z) L(z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import EXACT, Matrix, PolyMatrix, SeriesMatrix, check_regular_diagonal, sylvester_offdiag_solve
from .exceptions import ModeError, NonDiagonal, NonRegularLeading, TruncationTooShort


@dataclass(frozen=True)
class RankOneSystem:
    """The system ``z**2 dY/dz = A(z) Y``; ``A`` is a PolyMatrix or a SeriesMatrix."""

    A: PolyMatrix | SeriesMatrix

    @classmethod
    def saito(cls, u: Matrix, v: Matrix) -> "RankOneSystem":
        """``(U - z V) dz / z**2``."""
        return cls(PolyMatrix([u, -v]))

    @classmethod
    def cv(cls, u: Matrix, q: Matrix, udag: Matrix) -> "RankOneSystem":
        """``(U - z Q - z**2 U^dag) dz / z**2``."""
        return cls(PolyMatrix([u, -q, -udag]))

    @property
    def dim(self) -> int:
        return self.A.dim

    @property
    def mode(self) -> str:
        return self.A.mode

    @property
    def leading(self) -> Matrix:
        return self.A[0]

    @property
    def known_order(self) -> float:
        return float("inf") if isinstance(self.A, PolyMatrix) else self.A.order

    def coefficient(self, k: int) -> Matrix:
        return self.A[k]


@dataclass(frozen=True)
class NormalForm:
    """Diagonal system ``diag(u_i + mu_i z) dz / z**2``."""

    exponents: tuple
    residues: tuple

    def matrix(self) -> PolyMatrix:
        return PolyMatrix([Matrix.diag(self.exponents), Matrix.diag(self.residues)])

    @property
    def is_residue_free(self) -> bool:
        return all(mu == 0 for mu in self.residues)


@dataclass(frozen=True)
class FormalReduction:
    gauge: SeriesMatrix
    normal_form: NormalForm


def formal_reduce(system: RankOneSystem, order: int | None = None) -> FormalReduction:
    """Formal gauge to the diagonal normal form, with ``P_0 = Id``.

    At order ``k`` the off-diagonal part of ``P_k`` solves
    ``[U, P_k] = (k-1) P_{k-1} - sum_{j=1..k} A_j P_{k-j} + P_{k-1} diag(mu)``
    and its diagonal part is the unique choice that makes the order ``k+1``
    equation solvable. The residues are ``mu = diag(A_1)``.

    Parameters
    ----------
    system : RankOneSystem
        Leading coefficient must be diagonal with distinct entries.
    order : int, optional
        Gauge is returned through ``z**order``; needs ``A`` through
        ``order + 1``. Defaults to ``2 m + 4``.
    """
    m = system.dim
    if order is None:
        order = 2 * m + 4
    if system.known_order < order + 1:
        raise TruncationTooShort(f"need A through z^{order + 1}, have z^{system.known_order}")
    u = system.leading
    try:
        check_regular_diagonal(u, NonRegularLeading)
    except NonDiagonal as exc:
        raise NonRegularLeading(str(exc)) from exc
    a = [system.coefficient(k) for k in range(order + 2)]
    mu = a[1].diag_part()
    p = [Matrix.identity(m, system.mode)]
    for k in range(1, order + 1):
        rhs = p[k - 1] * (k - 1) + p[k - 1] @ mu
        for j in range(1, k + 1):
            rhs = rhs - a[j] @ p[k - j]
        if system.mode == EXACT and not rhs.has_zero_diagonal():
            raise AssertionError(f"diagonal solvability failed at order {k}")  # pragma: no cover
        off = sylvester_offdiag_solve(u, rhs.offdiag_part())
        acc = a[1] @ off
        for j in range(2, k + 2):
            acc = acc + a[j] @ p[k + 1 - j]
        p.append(off + acc.diag_part() * _inverse(k, system.mode))
    nf = NormalForm(tuple(u.diagonal()), tuple(mu.diagonal()))
    return FormalReduction(SeriesMatrix(p, order, m, system.mode), nf)


def _inverse(k: int, mode: str):
    return Fraction(1, k) if mode == EXACT else 1.0 / k


def gauge_residual(system: RankOneSystem, gauge: SeriesMatrix, target: PolyMatrix | SeriesMatrix) -> SeriesMatrix:
    """``z**2 P' - A P + P L`` through the order fixed by ``gauge``.

    Zero through order ``N`` exactly when ``gauge`` carries ``target`` to
    ``system`` to that order.
    """
    a = system.A
    if isinstance(a, PolyMatrix):
        a = a.to_series(gauge.order)
    if isinstance(target, PolyMatrix):
        target = target.to_series(gauge.order)
    return gauge.derivative().shift(2) - a @ gauge + gauge @ target


def exp_gauge_reduce(u: Matrix, udag: Matrix, order: int | None = None) -> SeriesMatrix:
    """Truncation of ``g(z) = exp(-z U^dag)``.

    ``g`` carries ``U dz/z**2`` to ``(U - z**2 U^dag) dz/z**2``: since the two
    diagonal matrices commute, ``z**2 g' = -z**2 U^dag g`` cancels the
    ``z**2`` term exactly.
    """
    if u.mode != udag.mode:
        raise ModeError("U and U^dag must share a mode")
    if not u.is_diagonal() or not udag.is_diagonal():
        raise NonDiagonal("U and U^dag must both be diagonal")
    if u @ udag != udag @ u:
        raise NonDiagonal("U and U^dag do not commute")  # pragma: no cover
    if order is None:
        order = 2 * u.dim + 4
    step = -udag
    coeffs = [Matrix.identity(u.dim, u.mode)]
    for k in range(1, order + 1):
        coeffs.append(coeffs[-1] @ step * _inverse(k, u.mode))
    return SeriesMatrix(coeffs, order, u.dim, u.mode)
