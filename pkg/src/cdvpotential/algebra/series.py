"""Polynomial and truncated power-series matrices in one variable ``z``."""

from __future__ import annotations

from typing import Sequence

from ..exceptions import ModeError, SingularConstantTerm, SingularMatrix
from .matrix import Matrix
from .scalar import EXACT, FLOAT, GaussianRational, as_float, exact


def _common(coeffs: Sequence[Matrix], dim=None, mode=None):
    coeffs = [c if isinstance(c, Matrix) else Matrix(c) for c in coeffs]
    if coeffs:
        dim = coeffs[0].dim if dim is None else dim
        mode = coeffs[0].mode if mode is None else mode
        for c in coeffs:
            if c.dim != dim:
                raise ValueError("coefficient dimensions differ")
            if c.mode != mode:
                raise ModeError("coefficient modes differ")
    if dim is None or mode is None:
        raise ValueError("empty coefficient list needs explicit dim and mode")
    return coeffs, dim, mode


def _eval_scalar(z, mode):
    if mode == EXACT:
        if isinstance(z, (float, complex)):
            return as_float(z), FLOAT
        return exact(z), EXACT
    return as_float(z), FLOAT


class PolyMatrix:
    """Matrix polynomial ``sum_k coeffs[k] * z**k``; trailing zero coefficients are stripped."""

    __slots__ = ("coeffs", "dim", "mode")

    def __init__(self, coeffs: Sequence, dim: int | None = None, mode: str | None = None):
        coeffs, dim, mode = _common(list(coeffs), dim, mode)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def constant(cls, m: Matrix) -> "PolyMatrix":
        return cls([m], m.dim, m.mode)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Matrix:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Matrix.zeros(self.dim, self.mode)

    __getitem__ = coefficient

    def is_zero(self) -> bool:
        return not self.coeffs

    def _lift(self, other):
        if isinstance(other, Matrix):
            return PolyMatrix([other], self.dim, self.mode)
        return other

    def __add__(self, other):
        other = self._lift(other)
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyMatrix([self[k] + other[k] for k in range(n)], self.dim, self.mode)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyMatrix([self[k] - other[k] for k in range(n)], self.dim, self.mode)

    def __neg__(self):
        return PolyMatrix([-c for c in self.coeffs], self.dim, self.mode)

    def __mul__(self, c):
        if isinstance(c, (Matrix, PolyMatrix)):
            return NotImplemented
        return PolyMatrix([x * c for x in self.coeffs], self.dim, self.mode)

    __rmul__ = __mul__

    def __matmul__(self, other):
        other = self._lift(other)
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return PolyMatrix([], self.dim, self.mode)
        out = [Matrix.zeros(self.dim, self.mode) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a @ b
        return PolyMatrix(out, self.dim, self.mode)

    def __rmatmul__(self, other):
        if isinstance(other, Matrix):
            return PolyMatrix([other], self.dim, self.mode) @ self
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.dim == other.dim and self.mode == other.mode and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, self.mode, self.coeffs))

    def derivative(self) -> "PolyMatrix":
        return PolyMatrix([c * k for k, c in enumerate(self.coeffs) if k > 0], self.dim, self.mode)

    def shift(self, k: int) -> "PolyMatrix":
        """Multiply by ``z**k`` (``k >= 0``)."""
        if self.is_zero():
            return self
        return PolyMatrix([Matrix.zeros(self.dim, self.mode)] * k + list(self.coeffs), self.dim, self.mode)

    def map(self, f) -> "PolyMatrix":
        return PolyMatrix([f(c) for c in self.coeffs], self.dim, self.mode)

    def to_float(self) -> "PolyMatrix":
        return self.map(Matrix.to_float) if self.mode == EXACT else self

    def __call__(self, z) -> Matrix:
        z, mode = _eval_scalar(z, self.mode)
        coeffs = [c.to_float() for c in self.coeffs] if mode != self.mode else list(self.coeffs)
        acc = Matrix.zeros(self.dim, mode)
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def det(self) -> tuple:
        """Exact determinant as scalar coefficients (lowest first).

        The determinant has degree at most ``dim * degree``; it is recovered by
        evaluating at that many plus one integer points and interpolating.
        """
        if self.mode != EXACT:
            raise ModeError("polynomial determinant is exact-only")
        from . import univariate as uv

        if self.is_zero():
            return ()
        n = self.dim * self.degree + 1
        xs = list(range(n))
        ys = [self(x).det() for x in xs]
        # Newton divided differences
        coef = list(ys)
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
        poly: tuple = ()
        for i in range(n - 1, -1, -1):
            poly = uv.add(uv.mul(poly, (GaussianRational(-xs[i]), GaussianRational(1))), (coef[i],))
        return poly

    def to_series(self, order: int) -> "SeriesMatrix":
        return SeriesMatrix([self[k] for k in range(order + 1)], order, self.dim, self.mode)

    def __repr__(self):
        return f"PolyMatrix(degree={self.degree}, dim={self.dim}, mode={self.mode!r})"


class SeriesMatrix:
    """Matrix power series known through ``z**order``.

    Coefficients beyond ``order`` are unknown, not zero; every operation
    returns a result whose order never exceeds what its inputs determine.
    """

    __slots__ = ("coeffs", "order", "dim", "mode")

    def __init__(self, coeffs: Sequence, order: int | None = None, dim: int | None = None, mode: str | None = None):
        coeffs, dim, mode = _common(list(coeffs), dim, mode)
        if order is None:
            order = len(coeffs) - 1
        if order < -1:
            raise ValueError("order must be >= -1")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        coeffs = coeffs + [Matrix.zeros(dim, mode)] * (order + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("SeriesMatrix is immutable")

    @classmethod
    def identity(cls, m: int, order: int, mode: str = EXACT) -> "SeriesMatrix":
        return cls([Matrix.identity(m, mode)], order, m, mode)

    def coefficient(self, k: int) -> Matrix:
        if k < 0:
            return Matrix.zeros(self.dim, self.mode)
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    __getitem__ = coefficient

    def _lift(self, other):
        if isinstance(other, Matrix):
            return SeriesMatrix([other], self.order, self.dim, self.mode)
        if isinstance(other, PolyMatrix):
            return other.to_series(self.order)
        return other

    def __add__(self, other):
        other = self._lift(other)
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        n = min(self.order, other.order)
        return SeriesMatrix([self[k] + other[k] for k in range(n + 1)], n, self.dim, self.mode)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        n = min(self.order, other.order)
        return SeriesMatrix([self[k] - other[k] for k in range(n + 1)], n, self.dim, self.mode)

    def __rsub__(self, other):
        other = self._lift(other)
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return other - self

    def __neg__(self):
        return SeriesMatrix([-c for c in self.coeffs], self.order, self.dim, self.mode)

    def __mul__(self, c):
        if isinstance(c, (Matrix, PolyMatrix, SeriesMatrix)):
            return NotImplemented
        return SeriesMatrix([x * c for x in self.coeffs], self.order, self.dim, self.mode)

    __rmul__ = __mul__

    def __matmul__(self, other):
        other = self._lift(other)
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = Matrix.zeros(self.dim, self.mode)
            for j in range(k + 1):
                a = self.coeffs[j]
                if not a.is_zero():
                    acc = acc + a @ other.coeffs[k - j]
            out.append(acc)
        return SeriesMatrix(out, n, self.dim, self.mode)

    def __rmatmul__(self, other):
        other = self._lift(other)
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return other @ self

    def derivative(self) -> "SeriesMatrix":
        return SeriesMatrix([self.coeffs[k] * k for k in range(1, self.order + 1)], self.order - 1, self.dim, self.mode)

    def shift(self, k: int) -> "SeriesMatrix":
        """Multiply by ``z**k``; the known order grows by ``k``."""
        zero = Matrix.zeros(self.dim, self.mode)
        return SeriesMatrix([zero] * k + list(self.coeffs), self.order + k, self.dim, self.mode)

    def truncate(self, order: int) -> "SeriesMatrix":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return SeriesMatrix(self.coeffs[: order + 1], order, self.dim, self.mode)

    def map(self, f) -> "SeriesMatrix":
        return SeriesMatrix([f(c) for c in self.coeffs], self.order, self.dim, self.mode)

    def to_float(self) -> "SeriesMatrix":
        return self.map(Matrix.to_float) if self.mode == EXACT else self

    def equal_through(self, other: "SeriesMatrix", order: int | None = None) -> bool:
        other = self._lift(other)
        n = min(self.order, other.order) if order is None else order
        return all(self[k] == other[k] for k in range(n + 1))

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.order == other.order and self.mode == other.mode and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.mode, self.coeffs))

    def partial_sum(self, z) -> Matrix:
        """Evaluate the truncated sum at ``z``."""
        z, mode = _eval_scalar(z, self.mode)
        coeffs = [c.to_float() for c in self.coeffs] if mode != self.mode else list(self.coeffs)
        acc = Matrix.zeros(self.dim, mode)
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def to_poly(self) -> PolyMatrix:
        return PolyMatrix(self.coeffs, self.dim, self.mode)

    def invert(self) -> "SeriesMatrix":
        return series_invert(self)

    def __repr__(self):
        return f"SeriesMatrix(order={self.order}, dim={self.dim}, mode={self.mode!r})"


def series_invert(p: SeriesMatrix) -> SeriesMatrix:
    """Two-sided inverse of a matrix power series through its truncation order.

    Raises
    ------
    SingularConstantTerm
        If the constant coefficient is not invertible.
    """
    if isinstance(p, PolyMatrix):
        raise TypeError("convert to a SeriesMatrix with an explicit order first")
    try:
        q0 = p[0].inv()
    except SingularMatrix as exc:
        raise SingularConstantTerm("constant term of the series is singular") from exc
    q = [q0]
    for k in range(1, p.order + 1):
        acc = Matrix.zeros(p.dim, p.mode)
        for j in range(1, k + 1):
            pj = p.coeffs[j]
            if not pj.is_zero():
                acc = acc + pj @ q[k - j]
        q.append(-(q0 @ acc))
    return SeriesMatrix(q, p.order, p.dim, p.mode)


def gauge_transform(a, g: SeriesMatrix, weight: int = 2) -> SeriesMatrix:
    """Transform the system ``z**weight * dY/dz = a(z) Y`` by ``Y = g X``.

    Returns ``g^{-1} a g - z**weight g^{-1} g'`` through the order determined
    by the inputs. ``weight=2`` is a Poincare rank one system, ``weight=1``
    a simple-pole (regular singular) system.
    """
    if isinstance(a, PolyMatrix):
        a = a.to_series(g.order)
    ginv = series_invert(g)
    deriv = g.derivative().shift(weight)
    return ginv @ a @ g - ginv @ deriv
