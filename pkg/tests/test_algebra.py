import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cdvpotential.algebra import (
    EXACT,
    FLOAT,
    GaussianRational,
    Matrix,
    PolyMatrix,
    SeriesMatrix,
    exact,
    gauge_transform,
    integer_semisimple_check,
    matrix_exp,
    series_invert,
    sylvester_offdiag_solve,
    sylvester_solve,
)
from cdvpotential.algebra import univariate as uv
from cdvpotential.exceptions import (
    FloatModeUnsupported,
    ModeError,
    NonRegularU,
    NonzeroDiagonal,
    SingularConstantTerm,
    SingularMatrix,
)
from strategies import exact_matrices, gaussian, regular_diagonals


def to_sympy(a: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator) for x in row] for row in a.rows])


# -- scalars --------------------------------------------------------------------


class TestGaussianRational:
    def test_field_operations(self):
        a = GaussianRational(Fraction(1, 2), 3)
        b = GaussianRational(-2, Fraction(1, 3))
        assert a + b == GaussianRational(Fraction(-3, 2), Fraction(10, 3))
        assert a * b == GaussianRational(-1 - 1, Fraction(1, 6) - 6)
        assert (a / b) * b == a
        assert a.conjugate() == GaussianRational(Fraction(1, 2), -3)
        assert a.abs2() == Fraction(1, 4) + 9

    def test_parse_and_exact(self):
        assert GaussianRational.parse("3/4") == GaussianRational(Fraction(3, 4))
        assert exact(("1/2", "-1")) == GaussianRational(Fraction(1, 2), -1)
        assert exact(5) == GaussianRational(5)
        with pytest.raises(ValueError):
            GaussianRational.parse("abc")

    def test_float_mixing_refused(self):
        with pytest.raises(ModeError):
            GaussianRational(1) + 0.5
        with pytest.raises(ModeError):
            exact(0.25)

    def test_powers_and_predicates(self):
        i = GaussianRational(0, 1)
        assert i**2 == -1
        assert i**-1 == -i
        assert GaussianRational(3).is_integer()
        assert not GaussianRational(Fraction(1, 2)).is_integer()
        assert not i.is_real()
        assert GaussianRational(0).is_zero() and not GaussianRational(0)

    @given(gaussian, gaussian, gaussian)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(gaussian)
    def test_to_complex(self, a):
        assert a.to_complex() == pytest.approx(complex(float(a.re), float(a.im)))


# -- matrices -------------------------------------------------------------------


class TestMatrix:
    def test_must_be_square(self):
        with pytest.raises(ValueError):
            Matrix([[1, 2]])
        with pytest.raises(ValueError):
            Matrix([])

    def test_mode_inference_and_mixing(self):
        assert Matrix([[1, 2], [3, 4]]).mode == EXACT
        assert Matrix([[1.0, 2], [3, 4]], mode=FLOAT).mode == FLOAT
        with pytest.raises(ModeError):
            Matrix([[1, 2], [3, 4]]) + Matrix([[1.0, 0.0], [0.0, 1.0]])

    def test_float_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            Matrix([[float("nan")]], mode=FLOAT)

    def test_exact_inverse_and_det(self):
        a = Matrix([[2, 1], [1, 1]])
        assert a.det() == 1
        assert a @ a.inv() == Matrix.identity(2)
        with pytest.raises(SingularMatrix):
            Matrix([[1, 2], [2, 4]]).inv()

    @given(exact_matrices(3))
    def test_det_matches_sympy(self, a):
        d = to_sympy(a).det()
        assert sympy.simplify(d - (sympy.Rational(a.det().re.numerator, a.det().re.denominator) + sympy.I * sympy.Rational(a.det().im.numerator, a.det().im.denominator))) == 0

    @given(exact_matrices(3))
    def test_nullspace_and_rank(self, a):
        basis = a.nullspace()
        assert len(basis) + a.rank() == 3
        for v in basis:
            assert all(sum((a[i, j] * v[j] for j in range(3)), GaussianRational(0)) == 0 for i in range(3))

    def test_structure_helpers(self):
        a = Matrix([[5, 1], [2, 7]])
        assert a.offdiag_part() == Matrix([[0, 1], [2, 0]])
        assert a.diag_part() == Matrix.diag([5, 7])
        assert a.trace() == 12
        assert a.commutator(a).is_zero()
        assert a.T == Matrix([[5, 2], [1, 7]])


# -- univariate polynomials -----------------------------------------------------


class TestUnivariate:
    @given(exact_matrices(3))
    def test_charpoly_matches_sympy(self, a):
        lam = sympy.Symbol("lam")
        ref = sympy.Poly(to_sympy(a).charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
        ours = uv.charpoly(a)
        assert len(ours) == len(ref)
        for c, r in zip(ours, ref):
            assert sympy.expand(r - sympy.Rational(c.re.numerator, c.re.denominator) - sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)) == 0

    def test_integer_roots(self):
        p = uv.mul(uv.mul((-2, 1), (-2, 1)), (3, 1))  # (x-2)^2 (x+3)
        roots, cof = uv.integer_roots(p)
        assert sorted(roots) == [-3, 2, 2]
        assert cof == uv.trim([1])
        assert uv.integer_roots((Fraction(-1, 4), 0, 1)) is None
        roots, cof = uv.integer_roots((-2, 0, 1))
        assert roots == [] and cof == uv.trim([-2, 0, 1])

    def test_gcd_and_shift(self):
        p = uv.mul((-1, 1), (-3, 1))  # (x-1)(x-3)
        q = uv.shift_argument(p, -2)  # (x-3)(x-5)
        assert uv.gcd(p, q) == uv.trim([-3, 1])
        assert uv.squarefree_part(uv.mul(p, p)) == uv.monic(p)

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=5))
    def test_root_bound(self, roots):
        p = uv.trim([1])
        for r in roots:
            p = uv.mul(p, (-r, 1))
        assert all(abs(r) <= uv.root_bound(p) + 1e-12 for r in roots)


# -- Sylvester solvers ----------------------------------------------------------


class TestSylvesterOffdiag:
    def test_example_2x2(self):
        u = Matrix.diag([0, 1])
        m = Matrix([[0, 1], [-1, 0]])
        p = sylvester_offdiag_solve(u, m)
        assert p == Matrix([[0, -1], [-1, 0]])
        assert u @ p - p @ u == m

    def test_zero(self):
        assert sylvester_offdiag_solve(Matrix.diag([0, 1]), Matrix.zeros(2)).is_zero()

    def test_3x3_entries(self):
        u = Matrix.diag([1, 2, 3])
        m = Matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        p = sylvester_offdiag_solve(u, m)
        assert p[0, 2] == Fraction(-1, 2)
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert p[i, j] == Fraction(1, (i + 1) - (j + 1))

    def test_errors(self):
        with pytest.raises(NonRegularU):
            sylvester_offdiag_solve(Matrix.diag([1, 1]), Matrix([[0, 1], [1, 0]]))
        with pytest.raises(NonzeroDiagonal):
            sylvester_offdiag_solve(Matrix.diag([0, 1]), Matrix([[1, 0], [0, 0]]))

    def test_float_mode(self):
        u = Matrix.diag([0.0, 1.5j], mode=FLOAT)
        m = Matrix([[0, 2.0], [1.0, 0]], mode=FLOAT)
        p = sylvester_offdiag_solve(u, m)
        assert (u @ p - p @ u - m).norm() < 1e-14

    @given(st.integers(2, 4).flatmap(lambda m: st.tuples(regular_diagonals(m), exact_matrices(m))))
    def test_commutator_identity(self, data):
        u, a = data
        m = a.offdiag_part()
        p = sylvester_offdiag_solve(u, m)
        assert u @ p - p @ u == m
        assert p.has_zero_diagonal()


class TestSylvesterGeneral:
    @given(st.integers(1, 3).flatmap(lambda m: st.tuples(exact_matrices(m), exact_matrices(m), exact_matrices(m))))
    def test_exact_solution(self, abc):
        a, b, c = abc
        try:
            x = sylvester_solve(a, b, c)
        except SingularMatrix:
            return
        assert a @ x - x @ b == c

    def test_resonance(self):
        with pytest.raises(SingularMatrix):
            sylvester_solve(Matrix.diag([1, 2]), Matrix.diag([2, 5]), Matrix.identity(2))

    def test_float(self):
        rng = np.random.default_rng(0)
        a, b, c = (Matrix.from_numpy(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))) for _ in range(3))
        x = sylvester_solve(a, b, c)
        assert (a @ x - x @ b - c).norm() < 1e-10


# -- integer / semi-simple check ------------------------------------------------


class TestIntegerSemisimple:
    def test_examples(self):
        a = Matrix([[0, 1], [1, 0]])
        r = integer_semisimple_check(a * 2)
        assert r.semisimple and r.integer_eigenvalues and r.eigenvalues == (2, -2) and r.holds
        r = integer_semisimple_check(Matrix([[0, 1], [0, 0]]))
        assert not r.semisimple and not r.holds
        r = integer_semisimple_check(a * Fraction(1, 2))
        assert r.semisimple and not r.integer_eigenvalues and r.eigenvalues is None

    def test_float_rejected(self):
        with pytest.raises(FloatModeUnsupported):
            integer_semisimple_check(Matrix.identity(2, FLOAT))

    def test_gaussian_eigenvalues_not_integral(self):
        r = integer_semisimple_check(Matrix([[0, -1], [1, 0]]))  # eigenvalues +-i
        assert r.semisimple and not r.integer_eigenvalues

    @given(
        st.lists(st.integers(-3, 3), min_size=3, max_size=3),
        exact_matrices(3, st.integers(-2, 2).map(GaussianRational)),
        st.booleans(),
    )
    def test_similarity_invariance_and_sympy_oracle(self, eigs, s, jordan):
        if s.det() == 0:
            return
        d = Matrix.diag(eigs)
        if jordan and eigs[0] == eigs[1]:
            d = d + Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
        v = s @ d @ s.inv()
        r, r0 = integer_semisimple_check(v), integer_semisimple_check(d)
        assert (r.semisimple, r.integer_eigenvalues, r.eigenvalues) == (r0.semisimple, r0.integer_eigenvalues, r0.eigenvalues)
        assert r.semisimple == to_sympy(v).is_diagonalizable()
        assert r.integer_eigenvalues
        if r.semisimple:
            assert sorted(r.eigenvalues) == sorted(eigs)
        else:
            assert r.eigenvalues is None


# -- matrix exponential ---------------------------------------------------------


def taylor_exp(a: np.ndarray, terms: int = 60) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


class TestMatrixExp:
    def test_zero(self):
        assert matrix_exp(Matrix.zeros(3, FLOAT)) == Matrix.identity(3, FLOAT)

    def test_integer_diagonal(self):
        b = Matrix.diag([1, -1]).to_float() * (-2j * math.pi)
        assert (matrix_exp(b) - Matrix.identity(2, FLOAT)).norm() < 1e-12

    def test_rotation_against_taylor(self):
        t = 0.3
        b = Matrix([[0, t], [-t, 0]], mode=FLOAT)
        e = matrix_exp(b).to_numpy()
        assert np.allclose(e, [[math.cos(t), math.sin(t)], [-math.sin(t), math.cos(t)]], atol=1e-15)
        assert np.allclose(e, taylor_exp(b.to_numpy()), atol=1e-15)

    def test_exact_input_refused(self):
        with pytest.raises(ModeError):
            matrix_exp(Matrix.identity(2))

    def test_half_integers(self):
        b = Matrix.diag([Fraction(1, 2), Fraction(-1, 2)]).to_float() * (2j * math.pi)
        assert (matrix_exp(b) - Matrix.diag([-1.0, -1.0], mode=FLOAT)).norm() < 1e-12

    @given(st.lists(st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False), min_size=9, max_size=9))
    def test_inverse_property(self, entries):
        b = Matrix.from_numpy(np.array(entries).reshape(3, 3))
        prod = matrix_exp(b) @ matrix_exp(-b)
        assert (prod - Matrix.identity(3, FLOAT)).norm() < 1e-10

    def test_relative_accuracy_large_norm(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(3, 3))
        a = a / np.linalg.norm(a) * 40
        w, s = np.linalg.eig(a)
        ref = (s * np.exp(w)) @ np.linalg.inv(s)
        got = matrix_exp(Matrix.from_numpy(a)).to_numpy()
        assert np.linalg.norm(got - ref) / np.linalg.norm(ref) < 1e-10


# -- polynomial and series matrices ---------------------------------------------


class TestSeries:
    def test_invert_identity(self):
        s = SeriesMatrix.identity(2, 5)
        assert series_invert(s) == s

    def test_invert_nilpotent(self):
        e12 = Matrix([[0, 1], [0, 0]])
        p = SeriesMatrix([Matrix.identity(2), e12], 3)
        assert series_invert(p) == SeriesMatrix([Matrix.identity(2), -e12], 3)

    def test_invert_random_3x3(self):
        import random

        from strategies import rand_matrix

        rng = random.Random(8)
        p = SeriesMatrix([Matrix.identity(3)] + [rand_matrix(rng, 3) for _ in range(8)], 8)
        q = series_invert(p)
        assert p @ q == SeriesMatrix.identity(3, 8)
        assert q @ p == SeriesMatrix.identity(3, 8)

    def test_singular_constant(self):
        with pytest.raises(SingularConstantTerm):
            series_invert(SeriesMatrix([Matrix.zeros(2)], 2))

    @given(st.integers(1, 3).flatmap(lambda m: st.lists(exact_matrices(m), min_size=1, max_size=4)))
    def test_two_sided_inverse(self, tail):
        m = tail[0].dim
        p = SeriesMatrix([Matrix.identity(m) + tail[0]] + tail[1:], 5)
        if p[0].det() == 0:
            return
        q = series_invert(p)
        ident = SeriesMatrix.identity(m, 5)
        assert p @ q == ident and q @ p == ident

    def test_truncation_is_tracked(self):
        a = SeriesMatrix([Matrix.identity(2)], 3)
        b = SeriesMatrix([Matrix.identity(2)], 5)
        assert (a + b).order == 3
        with pytest.raises(IndexError):
            a[4]
        assert a.derivative().order == 2 and a.shift(2).order == 5

    def test_poly_det_and_eval(self):
        p = PolyMatrix([Matrix.identity(2), Matrix([[-1, -1], [1, 1]])])
        assert p.det() == uv.trim([1])
        assert p(2) == Matrix([[-1, -2], [2, 3]])
        assert p(0.5).mode == FLOAT

    def test_poly_det_against_sympy(self):
        z = sympy.Symbol("z")
        p = PolyMatrix([Matrix([[1, 2], [3, 4]]), Matrix([[0, 1], [1, 0]]), Matrix([[2, 0], [0, 1]])])
        ref = sympy.Matrix([[1 + 2 * z**2, 2 + z], [3 + z, 4 + z**2]]).det()
        coeffs = sympy.Poly(sympy.expand(ref), z).all_coeffs()[::-1]
        assert [c.re for c in p.det()] == [Fraction(int(c)) for c in coeffs]

    def test_gauge_transform_constant(self):
        a = PolyMatrix([Matrix.diag([0, 1]), Matrix([[0, 1], [1, 0]])]).to_series(4)
        g = SeriesMatrix([Matrix([[1, 1], [0, 1]])], 4)
        out = gauge_transform(a, g)
        gi = g[0].inv()
        assert out[0] == gi @ a[0] @ g[0] and out[1] == gi @ a[1] @ g[0]

    def test_partial_sum(self):
        s = SeriesMatrix([Matrix.identity(1), Matrix([[1]]), Matrix([[Fraction(1, 2)]])], 2)
        assert s.partial_sum(0.1).to_numpy()[0, 0] == pytest.approx(1 + 0.1 + 0.005)
        assert cmath.isclose(complex(s.partial_sum(1j).to_numpy()[0, 0]), 1 + 1j - 0.5)
