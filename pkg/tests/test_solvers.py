"""
Test suite for src/solvers/
"""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.algebra.Quaternion import I, J, K, ONE, ZERO, Quaternion, conj, mul, re  # noqa: E402
from src.algebra.Sandwich import compose, to_matrix  # noqa: E402
from src.errors import DegenerateInputError, SingularSystemError  # noqa: E402
from src.linalg.LinearEquation import LinearEquation  # noqa: E402
from src.linalg.RealSystem import (adjugate4, assemble_A, assemble_M, det4,  # noqa: E402
                                   frobenius_scale, sandwich_of)
from src.solvers.BaseSolver import SolveMethod, Summation  # noqa: E402
from src.solvers.ClosedFormSolver import (ClosedFormSolver, delta, phi_apply,  # noqa: E402
                                          phi_as_operator, phi_terms_list, solve_general,
                                          solve_with_conjugate)
from src.solvers.OracleSolver import OracleSolver, solve_oracle  # noqa: E402
from src.solvers.SylvesterSolver import SylvesterSolver, reduce_three_term, solve_sylvester  # noqa: E402
from src.solvers.TwoTermSolver import solve_two_term  # noqa: E402
from src.utils.config import SolverSettings  # noqa: E402
from tests.helpers import corpus, random_quaternion, rel_error  # noqa: E402

ROUTE_TOL = 1e-8


class TestTwoTermSolver:
    """c q b = d"""

    def test_solution(self):
        """Test i q j = k"""
        report = solve_two_term(I, J, K)
        assert mul(mul(I, report.q), J).is_close(K, 1e-14)
        assert report.method == SolveMethod.TWO_TERM
        assert report.residual <= 1e-14

    def test_determinant(self):
        """Test det(A) = (|c|^2 |b|^2)^2 and Delta = -3 det(A)"""
        c, b = Quaternion(1, 1, 0, 0), Quaternion(0, 2, 0, 0)
        report = solve_two_term(c, b, ONE)
        assert report.det_a == pytest.approx(64.0)
        assert report.delta == pytest.approx(-192.0)
        assert report.det_a == pytest.approx(det4(assemble_A(LinearEquation.plain([(c, b)], ONE))))

    def test_zero_coefficient(self):
        """Test that c = 0 is degenerate"""
        with pytest.raises(DegenerateInputError):
            solve_two_term(ZERO, ONE, ONE)


class TestSylvesterSolver:
    """s q + q t = u"""

    def test_unit(self):
        """Test q + q = 2 gives q = 1"""
        report = solve_sylvester(ONE, ONE, Quaternion(2, 0, 0, 0))
        assert report.q.is_close(ONE, 1e-14)
        assert report.method == SolveMethod.SYLVESTER

    def test_degenerate_in_both_routes(self):
        """Test that i q - q i = u is degenerate for Sylvester and elimination"""
        minus_i = Quaternion(0, -1, 0, 0)
        with pytest.raises(DegenerateInputError):
            solve_sylvester(I, minus_i, ONE)
        eq = LinearEquation.plain([(I, ONE), (ONE, minus_i)], ONE)
        with pytest.raises(SingularSystemError):
            solve_oracle(eq)

    def test_matches_oracle(self):
        """Test agreement with elimination on random two-term equations"""
        rng = np.random.default_rng(31)
        for _ in range(50):
            s, t, u = random_quaternion(rng), random_quaternion(rng), random_quaternion(rng)
            eq = LinearEquation.plain([(s, ONE), (ONE, t)], u)
            if np.linalg.cond(assemble_A(eq)) > 1e6:
                continue
            assert rel_error(solve_sylvester(s, t, u).q, solve_oracle(eq).q) <= ROUTE_TOL

    def test_reduce_three_term(self):
        """Test that the reduced form has the same solution"""
        rng = np.random.default_rng(32)
        c1, b1, c2, b2, d = (random_quaternion(rng) for _ in range(5))
        s, t, u = reduce_three_term(c1, b1, c2, b2, d)
        q = solve_sylvester(s, t, u).q
        lhs = mul(mul(c1, q), b1) + mul(mul(c2, q), b2)
        assert lhs.is_close(d, 1e-9 * max(1.0, d.max_abs()))

    def test_solve_three_term(self):
        """Test that the three-term route reports the residual of the original equation"""
        eq = next(corpus(seed=33, count=1, n_values=[2]))
        (c1, b1), (c2, b2) = eq.plain_terms
        report = SylvesterSolver().solve_three_term(c1, b1, c2, b2, eq.rhs)
        assert report.residual <= 1e-9 * eq.residual_scale(report.q)
        assert rel_error(report.q, solve_oracle(eq).q) <= ROUTE_TOL

    def test_reduce_rejects_zero(self):
        """Test that c2 = 0 cannot be reduced"""
        with pytest.raises(DegenerateInputError):
            reduce_three_term(ONE, ONE, ZERO, ONE, ONE)


class TestDeltaAndPhi:
    """Basis-free Delta and Phi"""

    @pytest.mark.parametrize("summation", list(Summation))
    def test_single_unit_term(self, summation):
        """Test Delta = -3 and Phi(v) = -3 v for q = d"""
        eq = LinearEquation.plain([(ONE, ONE)], ONE)
        v = Quaternion(1, 2, 3, 4)
        assert delta(eq, summation) == pytest.approx(-3.0)
        assert phi_apply(eq, v, summation).is_close(v * -3.0, 1e-13)

    @pytest.mark.parametrize("summation", list(Summation))
    def test_delta_is_minus_three_det(self, summation):
        """Test Delta = -3 det(A) on a corpus with n from 1 to 9"""
        for eq in corpus(seed=41, count=200, n_values=range(1, 10)):
            matrix = assemble_A(eq)
            assert abs(delta(eq, summation) + 3.0 * det4(matrix)) <= 1e-10 * frobenius_scale(matrix) ** 4

    @pytest.mark.parametrize("summation", list(Summation))
    def test_phi_is_minus_three_adjugate(self, summation):
        """Test mat(Phi) = -3 adj(A)"""
        for eq in corpus(seed=42, count=100, n_values=range(1, 8)):
            matrix = assemble_A(eq)
            phi_matrix = to_matrix(phi_as_operator(eq, summation))
            error = np.max(np.abs(phi_matrix + 3.0 * adjugate4(matrix)))
            assert error <= 1e-9 * frobenius_scale(matrix) ** 3

    def test_compose_identity(self):
        """Test Phi o sum (c_p|b_p) = Delta (1|1)"""
        for eq in corpus(seed=43, count=50, n_values=range(1, 7)):
            product = to_matrix(compose(phi_as_operator(eq), sandwich_of(eq)))
            scale = frobenius_scale(assemble_A(eq)) ** 4
            assert np.max(np.abs(product - delta(eq) * np.eye(4))) <= 1e-9 * scale

    def test_naive_matches_symmetric(self):
        """Test that both summation orders agree"""
        for eq in corpus(seed=44, count=100, n_values=range(1, 9)):
            scale = eq.scale()
            d_naive, d_sym = delta(eq, Summation.NAIVE), delta(eq, Summation.SYMMETRIC)
            assert abs(d_naive - d_sym) <= 1e-11 * max(1.0, scale ** 4)
            p_naive = phi_apply(eq, eq.rhs, Summation.NAIVE)
            p_sym = phi_apply(eq, eq.rhs, Summation.SYMMETRIC)
            assert (p_naive - p_sym).max_abs() <= 1e-11 * max(1.0, scale ** 3 * eq.rhs.norm())

    def test_scale_covariance(self):
        """Test Delta(t c) = t^4 Delta(c) and Phi(t c) = t^3 Phi(c)"""
        t = 1.7
        for eq in corpus(seed=45, count=30, n_values=range(1, 6)):
            scaled = LinearEquation.plain([(c * t, b) for c, b in eq.plain_terms], eq.rhs)
            assert delta(scaled) == pytest.approx(t ** 4 * delta(eq), rel=1e-10, abs=1e-12)
            assert phi_apply(scaled, eq.rhs).is_close(phi_apply(eq, eq.rhs) * t ** 3, 1e-10)

    def test_unit_conjugation(self):
        """Test Delta invariance under c -> u c u^-1 for a unit u"""
        u = Quaternion(0.5, 0.5, 0.5, 0.5)
        for eq in corpus(seed=46, count=30, n_values=range(1, 6)):
            rotated = LinearEquation.plain([(mul(mul(u, c), conj(u)), b) for c, b in eq.plain_terms], eq.rhs)
            assert delta(rotated) == pytest.approx(delta(eq), rel=1e-9, abs=1e-12)

    def test_term_list_lengths(self):
        """Test that the symmetric list is no longer than the naive one"""
        eq = next(corpus(seed=47, count=1, n_values=[5]))
        assert len(phi_terms_list(eq, Summation.SYMMETRIC)) <= len(phi_terms_list(eq, Summation.NAIVE))

    def test_rejects_conjugate_terms(self):
        """Test that Delta refuses conjugate terms"""
        with pytest.raises(ValueError):
            delta(LinearEquation(((ONE, ONE),), ((ONE, ONE),), ONE))


class TestClosedFormSolver:
    """q = Phi(d) / Delta and the conjugate reduction"""

    def test_oracle_equivalence(self):
        """Test closed form vs elimination on plain equations"""
        oracle = OracleSolver()
        for eq in corpus(seed=51, count=200, n_values=range(1, 10)):
            closed = solve_general(eq)
            assert rel_error(closed.q, oracle.solve(eq).q) <= ROUTE_TOL
            assert closed.residual <= 1e-9 * eq.residual_scale(closed.q)

    def test_naive_route(self):
        """Test that the naive route solves too"""
        eq = next(corpus(seed=52, count=1, n_values=[4]))
        report = ClosedFormSolver(summation=Summation.NAIVE).solve(eq)
        assert rel_error(report.q, solve_oracle(eq).q) <= ROUTE_TOL

    def test_degenerate(self):
        """Test i q - q i = d"""
        eq = LinearEquation.plain([(I, ONE), (ONE, Quaternion(0, -1, 0, 0))], ONE)
        with pytest.raises(DegenerateInputError) as info:
            solve_general(eq)
        assert abs(info.value.delta) <= 1e-12

    def test_nan_coefficient(self):
        """Test that a NaN coefficient is degenerate on both closed routes"""
        nan = Quaternion(float("nan"), 0, 0, 0)
        with pytest.raises(DegenerateInputError):
            solve_general(LinearEquation.plain([(nan, ONE)], ONE))
        with pytest.raises(DegenerateInputError):
            solve_with_conjugate(LinearEquation(((ONE, ONE),), ((nan, ONE),), ONE))

    def test_tolerance_from_settings(self):
        """Test that the degeneracy factor comes from the settings"""
        eq = LinearEquation.plain([(Quaternion(1e-3, 0, 0, 0), ONE)], ONE)
        assert solve_general(eq).q.is_close(Quaternion(1e3, 0, 0, 0), 1e-6)
        strict = ClosedFormSolver(settings=SolverSettings(degeneracy=10.0))
        with pytest.raises(DegenerateInputError):
            strict.solve(eq)

    def test_hand_conjugate_case(self):
        """Test -conj(q) = 1 + i gives q = -1 + i"""
        eq = LinearEquation((), ((ONE, ONE),), Quaternion(1, 1, 0, 0))
        report = solve_with_conjugate(eq)
        assert report.q.is_close(Quaternion(-1, 1, 0, 0), 1e-14)
        assert report.det_m == pytest.approx(-1.0)
        assert report.delta == pytest.approx(-3.0)

    def test_mixed_corpus(self):
        """Test plain plus conjugate terms against elimination"""
        oracle = OracleSolver()
        for conj_count in (1, 2):
            for eq in corpus(seed=53 + conj_count, count=100, n_values=range(1, 6), conj=conj_count):
                closed = solve_with_conjugate(eq)
                assert rel_error(closed.q, oracle.solve(eq).q) <= ROUTE_TOL
                assert closed.residual <= 1e-9 * eq.residual_scale(closed.q)

    def test_det_m_identity(self):
        """Test Re(Phi h) = -3 det(M)"""
        solver = ClosedFormSolver()
        for eq in corpus(seed=56, count=50, n_values=range(1, 5), conj=1):
            _, _, phi_h, h = solver.conjugate_parts(eq)
            matrix = assemble_M(eq)
            scale = frobenius_scale(assemble_A(eq.merged_plain()))
            assert abs(re(phi_h) + 3.0 * det4(matrix)) <= 1e-9 * max(1.0, scale ** 3 * h.norm())

    def test_conjugate_numerator(self):
        """Test that the numerator over Delta Re(Phi h) is the solution"""
        solver = ClosedFormSolver()
        eq = next(corpus(seed=57, count=1, n_values=[3], conj=1))
        scalar, numerator = solver.conjugate_numerator(eq)
        assert rel_error(numerator / scalar, solve_oracle(eq).q) <= ROUTE_TOL

    def test_conjugate_without_conjugate_terms(self):
        """Test that a plain equation falls through to the general solve"""
        eq = next(corpus(seed=58, count=1, n_values=[3]))
        report = solve_with_conjugate(eq)
        assert report.det_m is None
        assert report.q == solve_general(eq).q


class TestOracleSolver:
    """Elimination route"""

    def test_identity(self):
        """Test q = d"""
        d = Quaternion(1, 2, 3, 4)
        report = solve_oracle(LinearEquation.plain([(ONE, ONE)], d))
        assert report.q == d
        assert report.delta == pytest.approx(-3.0)
        assert report.method == SolveMethod.ORACLE

    def test_conjugate_determinant(self):
        """Test that det(M) is reported with conjugate terms"""
        report = solve_oracle(LinearEquation((), ((ONE, ONE),), ONE))
        assert report.det_m == pytest.approx(-1.0)
        assert report.q.is_close(Quaternion(-1, 0, 0, 0), 1e-15)

    def test_pivot_factor(self):
        """Test that a looser pivot factor rejects a nearly singular system"""
        # q + c q i with c = (1 - 1e-6) i has A = diag(eps, eps, 2 - eps, 2 - eps)
        eq = LinearEquation.plain([(ONE, ONE), (Quaternion(0, 1 - 1e-6, 0, 0), I)], ONE)
        assert solve_oracle(eq).q.is_close(Quaternion(1e6, 0, 0, 0), 1e-6)
        with pytest.raises(SingularSystemError):
            solve_oracle(eq, pivot_factor=1e-3)

    def test_nan_coefficient(self):
        """Test that a NaN coefficient stops elimination"""
        with pytest.raises(SingularSystemError):
            solve_oracle(LinearEquation.plain([(Quaternion(float("nan"), 0, 0, 0), ONE)], ONE))
