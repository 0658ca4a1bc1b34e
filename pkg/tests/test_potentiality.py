import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cdvpotential.algebra import GaussianRational, Matrix, PolyMatrix
from cdvpotential.exceptions import ModeError, NonExactMode, NonzeroDiagonalV, ZeroN, ZeroX
from cdvpotential.potentiality import (
    INCONSISTENT_STEP,
    RECURSION_NONTERMINATION,
    NoSolution,
    PolySolution,
    assemble_phi,
    closed_form_psi_2x2,
    solve_potentiality,
    verify_cgf,
)
from strategies import small_fraction

A = Matrix([[0, 1], [1, 0]])
U01 = Matrix.diag([0, 1])


def to_sym(x: GaussianRational):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)


def undetermined_coefficients(u: Matrix, v: Matrix, degree: int):
    """Independent oracle: solve for all coefficients of psi at once with sympy."""
    m = u.dim
    z = sympy.Symbol("z")
    syms = [[[sympy.Symbol(f"p{k}_{i}{j}") for j in range(m)] for i in range(m)] for k in range(1, degree + 1)]
    psi = sympy.eye(m) + sum((sympy.Matrix(syms[k - 1]) * z**k for k in range(1, degree + 1)), sympy.zeros(m))
    us = sympy.Matrix([[to_sym(x) for x in r] for r in u.rows])
    vs = sympy.Matrix([[to_sym(x) for x in r] for r in v.rows])
    expr = sympy.expand(z**2 * psi.diff(z) - (us * psi - psi * us) + z * vs * psi)
    eqs = [c for e in expr for c in sympy.Poly(e, z).all_coeffs()]
    flat = [s for block in syms for row in block for s in row]
    sol = sympy.solve(eqs, flat, dict=True)
    if not sol:
        return None
    sol = sol[0]
    return [sympy.Matrix(block).subs(sol) for block in syms]


def same(ours: Matrix, ref: sympy.Matrix) -> bool:
    return all(sympy.simplify(to_sym(ours[i, j]) - ref[i, j]) == 0 for i in range(ours.dim) for j in range(ours.dim))


class TestSolver:
    def test_v_zero(self):
        sol = solve_potentiality(Matrix.diag([0, 1, 2]), Matrix.zeros(3))
        assert isinstance(sol, PolySolution)
        assert sol.degree == 0 and sol.psi == PolyMatrix([Matrix.identity(3)])

    def test_n1_by_hand(self):
        sol = solve_potentiality(U01, A)
        assert sol.degree == 1
        assert sol.psi[1] == Matrix([[-1, -1], [1, 1]])
        assert sol.psi.det() == (GaussianRational(1),)

    def test_half_integer(self):
        sol = solve_potentiality(U01, A * Fraction(1, 2))
        assert isinstance(sol, NoSolution) and not sol
        assert sol.reason == RECURSION_NONTERMINATION and sol.step == 64

    def test_max_degree_flag(self):
        sol = solve_potentiality(U01, A * 3, max_degree=2)
        assert sol.reason == RECURSION_NONTERMINATION and sol.step == 2
        assert solve_potentiality(U01, A * 3, max_degree=3).degree == 3

    def test_nonzero_diagonal(self):
        with pytest.raises(NonzeroDiagonalV):
            solve_potentiality(U01, Matrix.identity(2))
        sol = solve_potentiality(U01, Matrix.identity(2), strict=False)
        assert sol.reason == INCONSISTENT_STEP and sol.step == 0

    def test_float_refused(self):
        with pytest.raises(NonExactMode):
            solve_potentiality(U01.to_float(), A.to_float())

    @pytest.mark.parametrize("n", [1, -1, 2, -2, 3])
    @pytest.mark.parametrize("x", [1, GaussianRational(2, 1)])
    def test_against_undetermined_coefficients(self, n, x):
        u = Matrix.diag([x, 0])
        sol = solve_potentiality(u, A * n)
        ref = undetermined_coefficients(u, A * n, abs(n))
        assert ref is not None
        assert all(same(sol.psi[k], ref[k - 1]) for k in range(1, abs(n) + 1))

    def test_three_dimensional_block(self):
        u = Matrix.diag([0, 1, 7])
        v = Matrix([[0, 2, 0], [2, 0, 0], [0, 0, 0]])
        sol = solve_potentiality(u, v)
        ref = undetermined_coefficients(u, v, 2)
        assert sol.degree == 2
        assert all(same(sol.psi[k], ref[k - 1]) for k in (1, 2))

    def test_three_dimensional_integral_spectrum(self):
        # V = J - Id has eigenvalues 2, -1, -1
        u = Matrix.diag([0, 1, 3])
        v = Matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        sol = solve_potentiality(u, v)
        ref = undetermined_coefficients(u, v, sol.degree)
        assert all(same(sol.psi[k], ref[k - 1]) for k in range(1, sol.degree + 1))

    def test_three_dimensional_no_solution_agrees_with_oracle(self):
        # eigenvalues 0 and +-sqrt(2)
        u = Matrix.diag([0, 1, 3])
        v = Matrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        assert not solve_potentiality(u, v, max_degree=6)
        for k in range(1, 4):
            assert undetermined_coefficients(u, v, k) is None

    @given(st.integers(-4, 4), st.builds(GaussianRational, small_fraction, small_fraction))
    def test_degree_law_and_determinant(self, n, x):
        if x == 0:
            return
        sol = solve_potentiality(Matrix.diag([x, 0]), A * n)
        assert sol.degree == abs(n)
        det = sol.psi.det()
        assert len(det) == 1 and det[0] != 0
        assert verify_cgf(sol.psi, Matrix.diag([x, 0]), A * n).is_zero()

    @given(st.integers(-3, 3), st.lists(st.builds(GaussianRational, small_fraction, small_fraction), min_size=2, max_size=2))
    def test_diagonal_rescaling(self, n, delta):
        if any(d == 0 for d in delta):
            return
        sol = solve_potentiality(U01, A * n)
        scaled = sol.psi @ Matrix.diag(delta)
        assert verify_cgf(scaled, U01, A * n).is_zero()


class TestClosedForm:
    def test_n1_x1(self):
        assert closed_form_psi_2x2(1, 1)[1] == Matrix([[1, 1], [-1, -1]])

    def test_n2_x1(self):
        p = closed_form_psi_2x2(2, 1)
        assert p[1] == Matrix([[4, 2], [-2, -4]])
        assert p[2] == Matrix([[1, -1], [-1, 1]]) * 6
        assert p.degree == 2

    def test_complex_x(self):
        x = GaussianRational(2, 1)
        assert closed_form_psi_2x2(1, x)[1] == Matrix([[1, 1], [-1, -1]]) * (1 / x)

    def test_n3_residual(self):
        u = Matrix.diag([1, 0])
        assert verify_cgf(closed_form_psi_2x2(3, 1), u, A * 3).is_zero()

    def test_errors(self):
        with pytest.raises(ZeroN):
            closed_form_psi_2x2(0, 1)
        with pytest.raises(ZeroX):
            closed_form_psi_2x2(1, 0)
        with pytest.raises(ValueError):
            closed_form_psi_2x2(Fraction(1, 2), 1)


class TestVerifyCgf:
    def test_identity_with_v(self):
        res = verify_cgf(PolyMatrix([Matrix.identity(2)]), U01, A)
        assert res == PolyMatrix([Matrix.zeros(2), A])

    def test_solver_output(self):
        sol = solve_potentiality(U01, A * 2)
        assert verify_cgf(sol.psi, U01, A * 2).is_zero()


class TestPhi:
    def test_identity_zero_ubar(self):
        phi = assemble_phi(solve_potentiality(U01, Matrix.zeros(2)), ubar=(0, 0))
        for z in (0, 1.5, -2j):
            assert phi(z).to_numpy() == pytest.approx(np.eye(2))

    def test_diagonal_exponential(self):
        u = Matrix.diag([GaussianRational(1, 2), GaussianRational(-1, 0), GaussianRational(0, 3)])
        phi = assemble_phi(solve_potentiality(u, Matrix.zeros(3)))
        z = 0.3 - 0.7j
        expected = np.diag([cmath.exp(z * complex(1, -2)), cmath.exp(-z), cmath.exp(z * (-3j))])
        assert np.abs(phi(z).to_numpy() - expected).max() < 1e-14

    def test_det_phi_n1(self):
        phi = assemble_phi(solve_potentiality(U01, A))
        assert phi(0).to_numpy() == pytest.approx(np.eye(2))
        assert abs(np.linalg.det(phi(1).to_numpy())) == pytest.approx(math.e, rel=1e-14)

    @given(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
    def test_strip_recovers_psi(self, z):
        sol = solve_potentiality(Matrix.diag([GaussianRational(1, 1), 0]), A * 2)
        phi = assemble_phi(sol)
        back = phi.strip_exponential(phi(z), z).to_numpy()
        assert np.abs(back - sol.psi(complex(z)).to_numpy()).max() < 1e-12 * max(1, np.abs(back).max())

    def test_strip_requires_float(self):
        phi = assemble_phi(solve_potentiality(U01, A))
        with pytest.raises(ModeError):
            phi.strip_exponential(Matrix.identity(2), 1)
