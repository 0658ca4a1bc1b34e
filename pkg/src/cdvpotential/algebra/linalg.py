"""Linear-algebra kernels shared by the reduction, monodromy and potentiality code."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..exceptions import (
    FloatModeUnsupported,
    MatrixExpOverflow,
    ModeError,
    NonDiagonal,
    NonRegularU,
    NonzeroDiagonal,
    SingularMatrix,
)
from . import univariate as uv
from .matrix import Matrix, solve_linear
from .scalar import EXACT, FLOAT


def check_regular_diagonal(u: Matrix, exc=NonRegularU) -> tuple:
    """Return the diagonal of ``u`` after checking it is diagonal with distinct entries."""
    if not u.is_diagonal():
        raise NonDiagonal("U must be diagonal")
    d = u.diagonal()
    for i in range(len(d)):
        for j in range(i):
            if d[i] == d[j]:
                raise exc(f"diagonal entries {j} and {i} of U coincide")
    return d


def sylvester_offdiag_solve(u: Matrix, m: Matrix) -> Matrix:
    """Solve ``U P - P U = M`` for ``P`` with zero diagonal.

    ``U`` must be diagonal with pairwise distinct entries and ``M`` must have
    zero diagonal; then ``P[i, j] = M[i, j] / (u_i - u_j)``.
    """
    if u.mode != m.mode:
        raise ModeError("U and M must share a mode")
    d = check_regular_diagonal(u)
    if not m.has_zero_diagonal():
        raise NonzeroDiagonal("M must have zero diagonal to lie in the image of ad(U)")
    zero = m[0, 0] * 0
    rows = [
        [zero if i == j else m[i, j] / (d[i] - d[j]) for j in range(u.dim)]
        for i in range(u.dim)
    ]
    return Matrix(rows, mode=u.mode)


def sylvester_solve(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
    """Solve ``A X - X B = C``; unique when ``A`` and ``B`` share no eigenvalue.

    Exact matrices go through the Kronecker-form linear system; float
    matrices use :func:`scipy.linalg.solve_sylvester`.
    """
    if not (a.mode == b.mode == c.mode):
        raise ModeError("mixed modes in Sylvester equation")
    n = a.dim
    if a.mode == FLOAT:
        x = scipy.linalg.solve_sylvester(a.to_numpy(), -b.to_numpy(), c.to_numpy())
        return Matrix.from_numpy(x)
    # vec(X) row-major: (A X)_{ij} = sum_k A_ik X_kj, (X B)_{ij} = sum_k X_ik B_kj
    zero = a[0, 0] * 0
    rows = []
    for i in range(n):
        for j in range(n):
            row = [zero] * (n * n)
            for k in range(n):
                row[k * n + j] = row[k * n + j] + a[i, k]
                row[i * n + k] = row[i * n + k] - b[k, j]
            rows.append(row)
    rhs = [c[i, j] for i in range(n) for j in range(n)]
    try:
        x = solve_linear(rows, rhs)
    except SingularMatrix as exc:
        raise SingularMatrix("Sylvester equation is resonant (A and B share an eigenvalue)") from exc
    return Matrix([x[i * n:(i + 1) * n] for i in range(n)], mode=EXACT)


@dataclass(frozen=True)
class IntegerSpectrum:
    """Verdict of :func:`integer_semisimple_check`.

    ``eigenvalues`` lists the integer eigenvalues with multiplicity in
    decreasing order, and is only filled when the matrix is both
    semi-simple and has integral spectrum.
    """

    semisimple: bool
    integer_eigenvalues: bool
    eigenvalues: tuple | None
    charpoly: tuple

    @property
    def holds(self) -> bool:
        return self.semisimple and self.integer_eigenvalues


def integer_semisimple_check(v: Matrix) -> IntegerSpectrum:
    """Decide exactly whether ``v`` is semi-simple with integer eigenvalues.

    Semi-simplicity is tested as ``s(v) == 0`` where ``s`` is the square-free
    part of the characteristic polynomial; integrality by integer root
    extraction. No floating eigensolver is involved.
    """
    if v.mode != EXACT:
        raise FloatModeUnsupported("integer_semisimple_check requires an exact matrix")
    p = uv.charpoly(v)
    s = uv.squarefree_part(p)
    semisimple = uv.evaluate_matrix(s, v).is_zero()
    split = uv.integer_roots(p)
    integral = split is not None and len(split[1]) == 1
    eigs = None
    if semisimple and integral:
        eigs = tuple(sorted(split[0], reverse=True))
    return IntegerSpectrum(semisimple, integral, eigs, p)


def matrix_exp(b: Matrix) -> Matrix:
    """Matrix exponential of a float-mode matrix (Pade scaling and squaring)."""
    if b.mode != FLOAT:
        raise ModeError("matrix_exp takes a float matrix; call to_float() first")
    with np.errstate(over="raise", invalid="raise"):
        try:
            out = scipy.linalg.expm(b.to_numpy())
        except FloatingPointError as exc:
            raise MatrixExpOverflow("matrix exponential overflowed") from exc
    if not np.all(np.isfinite(out)):
        raise MatrixExpOverflow("matrix exponential overflowed")
    return Matrix.from_numpy(out)
