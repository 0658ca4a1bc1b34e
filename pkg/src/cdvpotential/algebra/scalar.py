"""Scalars: exact Gaussian rationals and finite double-precision complex numbers."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from ..exceptions import ModeError

EXACT = "exact"
FLOAT = "float"


class GaussianRational:
    """Complex number ``re + i*im`` with ``re`` and ``im`` in Q.

    Arithmetic with ints, :class:`fractions.Fraction` and other Gaussian
    rationals is closed and exact. Mixing with ``float`` or ``complex``
    raises :class:`~cdvpotential.exceptions.ModeError`; convert explicitly
    with :meth:`to_complex`.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rational(re))
        object.__setattr__(self, "im", _rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # -- construction -------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"p/q"`` or a plain integer string as a real value."""
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {text!r}") from exc

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    # -- conversions --------------------------------------------------
    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return NotImplemented
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ModeError(f"cannot use {type(x).__name__} as an exact rational")


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x)
    if isinstance(x, (float, complex)):
        raise ModeError("implicit float/exact mixing; convert explicitly")
    return NotImplemented


def exact(x) -> GaussianRational:
    """Convert ints, Fractions, ``"p/q"`` strings or ``(re, im)`` pairs."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return GaussianRational(_rational(x[0]), _rational(x[1]))
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, (float, complex)):
        raise ModeError(f"refusing to convert float {x!r} to an exact value")
    return GaussianRational(_rational(x))


def as_float(x) -> complex:
    """Convert to a finite Python complex; exact values are rounded."""
    if isinstance(x, GaussianRational):
        z = x.to_complex()
    elif isinstance(x, Fraction):
        z = complex(float(x))
    else:
        z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite float scalar {z!r}")
    return z


def mode_of(x) -> str:
    if isinstance(x, GaussianRational):
        return EXACT
    if isinstance(x, (float, complex)):
        return FLOAT
    if isinstance(x, (int, Fraction)):
        return EXACT
    raise TypeError(f"not a scalar: {x!r}")


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return complex(x).conjugate()


def is_zero(x) -> bool:
    if isinstance(x, GaussianRational):
        return x.is_zero()
    return x == 0

