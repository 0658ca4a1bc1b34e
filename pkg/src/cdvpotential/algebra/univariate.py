"""Dense univariate polynomials over the Gaussian rationals.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros; ``()`` is the zero polynomial.
"""

from __future__ import annotations

import math

from .matrix import Matrix
from .scalar import GaussianRational, exact

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def trim(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(exact(c) for c in p)


def degree(p) -> int:
    return len(p) - 1


def add(p, q) -> tuple:
    n = max(len(p), len(q))
    return trim((p[i] if i < len(p) else _ZERO) + (q[i] if i < len(q) else _ZERO) for i in range(n))


def sub(p, q) -> tuple:
    return add(p, tuple(-c for c in q))


def mul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p, q) -> tuple[tuple, tuple]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [_ZERO] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        f = rem[-1] / lead
        quot[shift] = f
        for i, c in enumerate(q):
            rem[shift + i] = rem[shift + i] - f * c
        rem = list(trim(rem))
    return trim(quot), trim(rem)


def monic(p) -> tuple:
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def gcd(p, q) -> tuple:
    """Monic greatest common divisor."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(p) -> tuple:
    return trim(c * i for i, c in enumerate(p) if i > 0)


def squarefree_part(p) -> tuple:
    """Product of the distinct monic irreducible factors of ``p``."""
    p = trim(p)
    if len(p) <= 1:
        return (_ONE,) if p else ()
    g = gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0])


def shift_argument(p, k) -> tuple:
    """Coefficients of ``x -> p(x + k)``."""
    k = exact(k)
    out = ()
    for c in reversed(p):
        out = add(mul(out, (k, _ONE)), (c,))
    return out


def evaluate(p, x):
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def evaluate_matrix(p, a: Matrix) -> Matrix:
    """``p(a)`` by Horner's scheme."""
    m = a.dim
    acc = Matrix.zeros(m, a.mode)
    ident = Matrix.identity(m, a.mode)
    for c in reversed(p):
        acc = acc @ a + ident * c
    return acc


def charpoly(a: Matrix) -> tuple:
    """``det(x*Id - a)`` via the Faddeev-LeVerrier recursion (exact)."""
    n = a.dim
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    ident = Matrix.identity(n, a.mode)
    mk = Matrix.zeros(n, a.mode)
    for k in range(1, n + 1):
        mk = a @ mk + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(a @ mk).trace() / k
    return trim(coeffs)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def integer_roots(p) -> tuple[list[int], tuple] | None:
    """Integer roots of ``p`` with multiplicity, plus the remaining cofactor.

    Returns ``None`` unless every coefficient of the monic ``p`` is an
    integer (a monic polynomial splitting over Z has integer coefficients).
    """
    p = monic(trim(p))
    if not all(c.is_integer() for c in p):
        return None
    roots: list[int] = []
    while len(p) > 1 and p[0] == 0:
        roots.append(0)
        p = p[1:]
    while len(p) > 1:
        const = int(p[0].re)
        found = None
        for d in _divisors(const):
            for r in (d, -d):
                if evaluate(p, exact(r)) == 0:
                    found = r
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p, rem = divmod_poly(p, (exact(-found), _ONE))
        assert not rem
    return roots, p


def root_bound(p) -> float:
    """Upper bound for the moduli of the roots (min of Cauchy and Fujiwara)."""
    p = monic(trim(p))
    n = len(p) - 1
    if n <= 0:
        return 0.0
    mods = [math.sqrt(float(c.abs2())) for c in p[:-1]]
    cauchy = 1.0 + max(mods)
    fuji = 2.0 * max(
        (mods[n - i] / (2.0 if i == n else 1.0)) ** (1.0 / i) for i in range(1, n + 1)
    )
    return min(cauchy, fuji)
