"""Semi-simple Frobenius points in canonical coordinates.

A point is described by its canonical coordinates ``u``, the first and
second derivatives of the metric potential ``eta`` (``eta_i = g(e_i, e_i)``),
the charge ``d`` and optionally the matrix ``K`` of the real structure
``kappa`` in the idempotent frame. From these we derive

* ``U = diag(u)`` and its adjoint ``U^dag = conj(U)`` in the Tate case,
* ``V_ij = (u_j - u_i) eta_ij / (2 eta_j)`` for ``i != j`` and ``V_ii = 0``,
* ``Q`` from externally supplied connection forms evaluated on the Euler field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import EXACT, GaussianRational, Matrix, exact
from .exceptions import DimensionNotTwo, HypothesisViolated, MissingKappa, NonRegularU, ZeroEta


@dataclass(frozen=True)
class FrobeniusPoint:
    u: tuple
    eta_first: tuple
    eta_second: Matrix
    d: Fraction
    kappa: Matrix | None = None

    def __post_init__(self):
        u = tuple(exact(x) for x in self.u)
        eta = tuple(exact(x) for x in self.eta_first)
        eta2 = self.eta_second if isinstance(self.eta_second, Matrix) else Matrix(self.eta_second, mode=EXACT)
        m = len(u)
        if m == 0 or len(eta) != m or eta2.dim != m:
            raise ValueError("u, eta_first and eta_second must have matching dimension")
        if eta2.mode != EXACT:
            raise ValueError("eta_second must be exact")
        if len(set(u)) != m:
            raise NonRegularU("canonical coordinates must be pairwise distinct")
        if any(e == 0 for e in eta):
            raise ZeroEta("eta_i = g(e_i, e_i) must be nonzero")
        if eta2.transpose() != eta2:
            raise ValueError("eta_second must be symmetric")
        kappa = self.kappa
        if kappa is not None:
            kappa = kappa if isinstance(kappa, Matrix) else Matrix(kappa, mode=EXACT)
            if kappa.dim != m or kappa.mode != EXACT:
                raise ValueError("kappa must be an exact m x m matrix")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "eta_first", eta)
        object.__setattr__(self, "eta_second", eta2)
        object.__setattr__(self, "d", Fraction(self.d))
        object.__setattr__(self, "kappa", kappa)

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def U(self) -> Matrix:
        return Matrix.diag(self.u, mode=EXACT)

    @property
    def Udag(self) -> Matrix:
        """``U^dag = conj(U)``, valid in the Tate canonical frame."""
        return Matrix.diag([x.conjugate() for x in self.u], mode=EXACT)


def tate_family_2d(u1, u2, eta1, d) -> FrobeniusPoint:
    """Two-dimensional point with ``g(e, e) = 0`` and charge ``d``.

    Uses ``eta_2 = -eta_1``, ``eta_12 = -eta_11 = -eta_22`` and the
    homogeneity ``E(eta_1) = -d * eta_1`` (from ``Lie_E g = (2 - d) g`` with
    ``[E, e_i] = -e_i``), which fixes ``eta_11 = -d eta_1 / (u1 - u2)``.
    """
    u1, u2, eta1 = exact(u1), exact(u2), exact(eta1)
    d = Fraction(d)
    eta11 = -exact(d) * eta1 / (u1 - u2)
    return FrobeniusPoint(
        u=(u1, u2),
        eta_first=(eta1, -eta1),
        eta_second=Matrix([[eta11, -eta11], [-eta11, eta11]]),
        d=d,
    )


def v_from_potential(p: FrobeniusPoint) -> Matrix:
    """The matrix of ``nabla E + (2-d)/2 Id`` in the frame ``e_i``."""
    m = p.m
    zero = GaussianRational(0)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i == j:
                row.append(zero)
                continue
            if p.eta_first[j] == 0:
                raise ZeroEta(f"eta_{j + 1} vanishes")
            row.append((p.u[j] - p.u[i]) * p.eta_second[i, j] / (2 * p.eta_first[j]))
        rows.append(row)
    return Matrix(rows, mode=EXACT)


def q_from_connection_forms(omega_e: Matrix) -> Matrix:
    """Super-symmetric index ``Q``: the off-diagonal part of ``omega_i^j(E)``."""
    return omega_e.offdiag_part()


def structure_constants(m: int) -> list[Matrix]:
    """Multiplication matrices ``C^(i)`` in the idempotent frame, i.e. ``E_ii``."""
    return [Matrix([[1 if (j == i and k == i) else 0 for k in range(m)] for j in range(m)]) for i in range(m)]


def twisted_structure_constants(kappa: Matrix) -> list[Matrix]:
    """Matrices of ``-Phi^dag``: ``conj(K) conj(C^(i)) K``."""
    kbar = kappa.conj()
    return [kbar @ c.conj() @ kappa for c in structure_constants(kappa.dim)]


@dataclass(frozen=True)
class TateReport:
    kappa_diagonal: bool
    kappa_unimodular: bool
    h_matches_abs_eta: bool
    commutators_vanish: bool
    h_diagonal: tuple = field(default=())

    @property
    def overall(self) -> bool:
        return self.kappa_diagonal and self.kappa_unimodular and self.h_matches_abs_eta and self.commutators_vanish

    def as_dict(self) -> dict:
        return {
            "kappa_diagonal": self.kappa_diagonal,
            "kappa_unimodular": self.kappa_unimodular,
            "h_matches_abs_eta": self.h_matches_abs_eta,
            "commutators_vanish": self.commutators_vanish,
            "overall": self.overall,
        }


def tate_structure_check(p: FrobeniusPoint) -> TateReport:
    """Pointwise witnesses that the real structure is of Tate type.

    Checks that ``K`` is diagonal and unimodular, that ``h_ii = K_ii eta_i``
    is positive real and equal to ``|eta_i|`` (compared through squares, so
    no square roots are taken), and that ``[C^(i), conj(K) conj(C^(j)) K]``
    vanishes for all ``i, j``.
    """
    if p.kappa is None:
        raise MissingKappa("tate_structure_check needs the kappa matrix")
    k = p.kappa
    diagonal = k.is_diagonal()
    unimodular = all(k[i, i].abs2() == 1 for i in range(p.m))
    h = tuple(k[i, i] * p.eta_first[i] for i in range(p.m))
    h_ok = all(hi.is_real() and hi.re > 0 and hi.abs2() == eta.abs2() for hi, eta in zip(h, p.eta_first))
    cs = structure_constants(p.m)
    twisted = twisted_structure_constants(k)
    commute = all(ci.commutator(tj).is_zero() for ci in cs for tj in twisted)
    return TateReport(diagonal, unimodular, h_ok, commute, h)


@dataclass(frozen=True)
class Dim2Criterion:
    strongly_potential: bool
    n: Fraction
    predicted_v: Matrix


def dim2_criterion(p: FrobeniusPoint) -> Dim2Criterion:
    """Strong potentiality of a two-dimensional Tate point: ``d / 2`` must be an integer."""
    if p.m != 2:
        raise DimensionNotTwo(f"criterion applies to m = 2, got m = {p.m}")
    if p.eta_first[1] != -p.eta_first[0]:
        raise HypothesisViolated("expected eta_2 = -eta_1 (g(e, e) = 0)")
    n = p.d / 2
    v = Matrix([[0, n], [n, 0]], mode=EXACT)
    return Dim2Criterion(n.denominator == 1, n, v)
