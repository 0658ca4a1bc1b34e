"""Immutable square matrices over exact Gaussian rationals or floats."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..exceptions import ModeError, SingularMatrix
from .scalar import EXACT, FLOAT, GaussianRational, as_float, exact

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def _entry_mode(x):
    if isinstance(x, (float, complex, np.floating, np.complexfloating)):
        return FLOAT
    if isinstance(x, (GaussianRational, Fraction, str, tuple, list)):
        return EXACT
    if isinstance(x, (int, np.integer)):
        return None  # compatible with both
    raise TypeError(f"unsupported matrix entry {x!r}")


class Matrix:
    """Square ``m x m`` matrix whose entries all share one scalar mode.

    Parameters
    ----------
    rows : sequence of sequences
        Entries. Exact entries may be ints, Fractions, ``"p/q"`` strings,
        ``(re, im)`` pairs or :class:`GaussianRational`; float entries are
        Python/NumPy floats or complexes.
    mode : {"exact", "float"}, optional
        Inferred from the entries when omitted (ints alone mean exact).
    """

    __slots__ = ("_rows", "mode")

    def __init__(self, rows, mode: str | None = None):
        if isinstance(rows, Matrix):
            if mode is not None and mode != rows.mode:
                raise ModeError("use to_float() for explicit mode conversion")
            object.__setattr__(self, "_rows", rows._rows)
            object.__setattr__(self, "mode", rows.mode)
            return
        rows = [list(r) for r in rows]
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("matrix must be square with dim >= 1")
        modes = {_entry_mode(x) for r in rows for x in r} - {None}
        if len(modes) > 1:
            raise ModeError("matrix entries mix exact and float values")
        inferred = modes.pop() if modes else EXACT
        if mode is None:
            mode = inferred
        elif mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        elif mode == EXACT and inferred == FLOAT:
            raise ModeError("float entries given for an exact matrix")
        if mode == EXACT:
            data = tuple(tuple(exact(int(x)) if isinstance(x, np.integer) else exact(x) for x in r) for r in rows)
        else:
            data = tuple(tuple(as_float(x) for x in r) for r in rows)
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "mode", mode)

    @classmethod
    def _raw(cls, data, mode):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_rows", data)
        object.__setattr__(obj, "mode", mode)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (Matrix._raw, (self._rows, self.mode))

    # -- constructors -------------------------------------------------
    @classmethod
    def identity(cls, m: int, mode: str = EXACT) -> "Matrix":
        one, zero = (_ONE, _ZERO) if mode == EXACT else (1 + 0j, 0j)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(m)) for i in range(m)), mode)

    @classmethod
    def zeros(cls, m: int, mode: str = EXACT) -> "Matrix":
        zero = _ZERO if mode == EXACT else 0j
        return cls._raw(tuple((zero,) * m for _ in range(m)), mode)

    @classmethod
    def diag(cls, values: Sequence, mode: str | None = None) -> "Matrix":
        vals = list(values)
        m = len(vals)
        if m == 0:
            raise ValueError("empty diagonal")
        rows = [[vals[i] if i == j else 0 for j in range(m)] for i in range(m)]
        return cls(rows, mode=mode)

    @classmethod
    def from_numpy(cls, arr) -> "Matrix":
        arr = np.asarray(arr, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected a square 2-D array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("non-finite entries")
        return cls._raw(tuple(tuple(complex(x) for x in r) for r in arr), FLOAT)

    # -- access -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def diagonal(self) -> tuple:
        return tuple(self._rows[i][i] for i in range(self.dim))

    def _zero(self):
        return _ZERO if self.mode == EXACT else 0j

    def _one(self):
        return _ONE if self.mode == EXACT else 1 + 0j

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for j, x in enumerate(r) if i != j)

    def has_zero_diagonal(self) -> bool:
        return all(x == 0 for x in self.diagonal())

    # -- structure ----------------------------------------------------
    def diag_part(self) -> "Matrix":
        z = self._zero()
        return Matrix._raw(
            tuple(tuple(x if i == j else z for j, x in enumerate(r)) for i, r in enumerate(self._rows)),
            self.mode,
        )

    def offdiag_part(self) -> "Matrix":
        z = self._zero()
        return Matrix._raw(
            tuple(tuple(z if i == j else x for j, x in enumerate(r)) for i, r in enumerate(self._rows)),
            self.mode,
        )

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._rows)), self.mode)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conj(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(x.conjugate() for x in r) for r in self._rows), self.mode)

    def trace(self):
        total = self._zero()
        for x in self.diagonal():
            total = total + x
        return total

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.mode != self.mode:
            raise ModeError("cannot combine exact and float matrices; convert explicitly")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.mode
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.mode
        )

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._rows), self.mode)

    def _scalar(self, c):
        if self.mode == EXACT:
            return exact(c)
        if isinstance(c, GaussianRational):
            raise ModeError("exact scalar times float matrix; convert explicitly")
        return as_float(c)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        c = self._scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._rows), self.mode)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        cols = tuple(zip(*other._rows))
        z = self._zero()
        out = []
        for r in self._rows:
            row = []
            for c in cols:
                s = z
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(tuple(out), self.mode)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Matrix.identity(self.dim, self.mode)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def commutator(self, other: "Matrix") -> "Matrix":
        """``self @ other - other @ self``."""
        return self @ other - other @ self

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.mode == other.mode and self._rows == other._rows

    def __hash__(self):
        return hash((self.mode, self._rows))

    # -- conversions --------------------------------------------------
    def to_float(self) -> "Matrix":
        if self.mode == FLOAT:
            return self
        return Matrix._raw(tuple(tuple(x.to_complex() for x in r) for r in self._rows), FLOAT)

    def to_numpy(self) -> np.ndarray:
        if self.mode == EXACT:
            return np.array([[x.to_complex() for x in r] for r in self._rows], dtype=complex)
        return np.array(self._rows, dtype=complex)

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}], mode={self.mode!r})"

    # -- exact linear algebra ----------------------------------------
    def det(self):
        if self.mode == FLOAT:
            return complex(np.linalg.det(self.to_numpy()))
        a = [list(r) for r in self._rows]
        n = self.dim
        d = _ONE
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return _ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            piv = a[c][c]
            d = d * piv
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] / piv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return d

    def inv(self) -> "Matrix":
        if self.mode == FLOAT:
            arr = self.to_numpy()
            if np.linalg.cond(arr) > 1e15:
                raise SingularMatrix("matrix is numerically singular")
            return Matrix.from_numpy(np.linalg.inv(arr))
        n = self.dim
        aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(self._rows)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in red[:n]), EXACT)

    def rank(self) -> int:
        if self.mode == FLOAT:
            return int(np.linalg.matrix_rank(self.to_numpy()))
        _, pivots = rref([list(r) for r in self._rows])
        return len(pivots)

    def nullspace(self) -> list[tuple]:
        """Basis of the right kernel as exact column vectors."""
        if self.mode != EXACT:
            raise ModeError("nullspace is exact-only")
        return nullspace([list(r) for r in self._rows])

    def norm(self) -> float:
        """Frobenius norm, always as a float."""
        return float(np.linalg.norm(self.to_numpy()))


def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over an exact field; returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        # entries left of column c are already zero in the pivot row
        prow = [x / piv if x else x for x in a[r]]
        a[r] = prow
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                for k in nz:
                    row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace(rows: list[list]) -> list[tuple]:
    red, pivots = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve_linear(rows: list[list], rhs: list) -> list:
    """Solve a square exact system ``rows @ x = rhs``."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrix("linear system is singular")
    return [red[i][n] for i in range(n)]


def from_columns(columns: Iterable[Sequence]) -> Matrix:
    cols = list(columns)
    return Matrix(list(zip(*cols)))
