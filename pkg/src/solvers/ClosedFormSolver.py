"""
ClosedFormSolver Module - basis-free solution of linear quaternionic equations
For sum_p c_p q b_p = d the solution is q = Phi(d) / Delta, where Delta is a
real polynomial in the inner products and 4-brackets of the coefficients
(Delta = -3 det A) and Phi is a sandwich operator built from inner products
and triple duals (Phi = -3 adj A). Equations with conjugate terms reduce to
the same two quantities evaluated on the merged equation.
"""

from itertools import combinations, product
from typing import Iterator, List, Optional, Tuple

import numpy as np

from src.algebra.Quaternion import Quaternion, ZERO, bracket4, conj, re, tri_dual_conj
from src.algebra.Sandwich import SandwichOperator, SandwichTerm
from src.errors import DegenerateInputError
from src.linalg.LinearEquation import LinearEquation, Term
from .BaseSolver import BaseSolver, SolveMethod, SolveReport, Summation


def _require_plain(eq: LinearEquation) -> None:
    if eq.conj_terms:
        raise ValueError("Expected an equation without conjugate terms")


def _gram_tables(terms: Tuple[Term, ...]) -> Tuple[np.ndarray, np.ndarray]:
    """Gc[p][q] = c_p . c_q and Gb[p][q] = b_p . b_q."""
    c = np.array([t[0].coords() for t in terms], dtype=float).reshape(-1, 4)
    b = np.array([t[1].coords() for t in terms], dtype=float).reshape(-1, 4)
    return c @ c.T, b @ b.T


# ==================== DELTA ====================

def _delta_naive(terms: Tuple[Term, ...]) -> float:
    gc, gb = _gram_tables(terms)
    cs = [t[0] for t in terms]
    bs = [t[1] for t in terms]
    n = len(terms)
    total = 0.0
    for p, q, r, s in product(range(n), repeat=4):
        if len({p, q, r, s}) == 4:
            # brackets vanish on repeated indices
            total += bracket4(cs[p], cs[q], cs[r], cs[s]) * bracket4(bs[p], bs[q], bs[r], bs[s])
        total += 3.0 * gc[p, q] * gc[r, s] * gb[p, q] * gb[r, s]
        total -= 6.0 * gc[p, q] * gc[r, s] * gb[q, s] * gb[p, r]
    return float(total)


def _delta_symmetric(terms: Tuple[Term, ...]) -> float:
    gc, gb = _gram_tables(terms)
    cs = [t[0] for t in terms]
    bs = [t[1] for t in terms]
    brackets = sum(
        bracket4(*(cs[i] for i in quad)) * bracket4(*(bs[i] for i in quad))
        for quad in combinations(range(len(terms)), 4)
    )
    contraction = float(np.sum(gc * gb))
    cycle = float(np.trace(gc @ gb @ gc @ gb))
    return 24.0 * brackets + 3.0 * contraction ** 2 - 6.0 * cycle


# ==================== PHI ====================

def _phi_terms_naive(terms: Tuple[Term, ...]) -> Iterator[SandwichTerm]:
    gc, gb = _gram_tables(terms)
    cs = [t[0] for t in terms]
    bs = [t[1] for t in terms]
    n = len(terms)
    for p, q, r in product(range(n), repeat=3):
        yield SandwichTerm(tri_dual_conj(cs[p], cs[q], cs[r]), tri_dual_conj(bs[p], bs[q], bs[r]))
        yield SandwichTerm(conj(cs[q]) * (3.0 * gc[p, r] * gb[p, r]), conj(bs[q]))
        yield SandwichTerm(conj(cs[q]) * (-6.0 * gc[p, r] * gb[q, r]), conj(bs[p]))


def _phi_terms_symmetric(terms: Tuple[Term, ...]) -> Iterator[SandwichTerm]:
    gc, gb = _gram_tables(terms)
    cs = [t[0] for t in terms]
    bs = [t[1] for t in terms]
    n = len(terms)
    # each sorted triple stands for its 6 orderings; both duals flip sign together
    for p, q, r in combinations(range(n), 3):
        yield SandwichTerm(tri_dual_conj(cs[p], cs[q], cs[r]) * 6.0, tri_dual_conj(bs[p], bs[q], bs[r]))
    contraction = float(np.sum(gc * gb))
    mixed = gc @ gb
    for q in range(n):
        yield SandwichTerm(conj(cs[q]) * (3.0 * contraction), conj(bs[q]))
    for p, q in product(range(n), repeat=2):
        yield SandwichTerm(conj(cs[q]) * (-6.0 * float(mixed[p, q])), conj(bs[p]))


def _phi_terms(terms: Tuple[Term, ...], summation: Summation) -> Iterator[SandwichTerm]:
    if summation == Summation.NAIVE:
        return _phi_terms_naive(terms)
    return _phi_terms_symmetric(terms)


class ClosedFormSolver(BaseSolver):
    """
    Closed-form solver for plain and conjugate-containing equations.
    """

    method = SolveMethod.CLOSED_FORM

    def __init__(self, summation: Summation = Summation.SYMMETRIC, **kwargs):
        super().__init__(**kwargs)
        self.summation = summation

    # ==================== BUILDING BLOCKS ====================

    def delta(self, eq: LinearEquation, summation: Optional[Summation] = None) -> float:
        """Delta = -3 det A for an equation without conjugate terms."""
        _require_plain(eq)
        mode = summation or self.summation
        if mode == Summation.NAIVE:
            return _delta_naive(eq.plain_terms)
        return _delta_symmetric(eq.plain_terms)

    def phi_apply(self, eq: LinearEquation, v: Quaternion, summation: Optional[Summation] = None) -> Quaternion:
        """Phi(v) = -3 adj(A) v, evaluated as a sum of sandwiches."""
        _require_plain(eq)
        total = ZERO
        for term in _phi_terms(eq.plain_terms, summation or self.summation):
            total = total + term.apply(v)
        return total

    def phi_as_operator(self, eq: LinearEquation, summation: Optional[Summation] = None) -> SandwichOperator:
        """Explicit term list of Phi; composed with sum (c_p|b_p) it gives Delta (1|1)."""
        _require_plain(eq)
        return SandwichOperator(tuple(_phi_terms(eq.plain_terms, summation or self.summation)))

    def degeneracy_threshold(self, eq: LinearEquation, tol: Optional[float] = None) -> float:
        factor = self.settings.degeneracy if tol is None else tol
        return factor * eq.scale() ** 4

    # ==================== SOLVERS ====================

    def solve_general(self,
                      eq: LinearEquation,
                      tol: Optional[float] = None,
                      summation: Optional[Summation] = None) -> SolveReport:
        """
        q = Phi(d) / Delta.

        Raises:
            DegenerateInputError: If |Delta| <= tol * scale^4
        """
        _require_plain(eq)
        self._say(f"🧮 Closed form on {len(eq.plain_terms)} terms")
        delta = self.delta(eq, summation)
        det_a = -delta / 3.0
        if not abs(delta) > self.degeneracy_threshold(eq, tol):
            raise DegenerateInputError(
                f"Delta = {delta:.3e} is below the degeneracy threshold", delta=delta, det_a=det_a)
        q = self.phi_apply(eq, eq.rhs, summation) / delta
        return self._report(eq, q, delta=delta, det_a=det_a)

    def conjugate_parts(self,
                        eq: LinearEquation,
                        summation: Optional[Summation] = None) -> Tuple[float, Quaternion, Quaternion, Quaternion]:
        """Delta, Phi d, Phi h and h of the merged equation."""
        merged = eq.merged_plain()
        h = eq.h()
        delta = self.delta(merged, summation)
        operator = self.phi_as_operator(merged, summation)
        return delta, operator.apply(eq.rhs), operator.apply(h), h

    def conjugate_numerator(self,
                            eq: LinearEquation,
                            summation: Optional[Summation] = None) -> Tuple[float, Quaternion]:
        """
        Scalar and quaternion of
            Delta Re(Phi h) q = Delta Re(Phi d) - Re(Phi d) Phi h + Re(Phi h) Phi d
        """
        delta, phi_d, phi_h, _ = self.conjugate_parts(eq, summation)
        numerator = Quaternion.scalar(delta * re(phi_d)) - phi_h * re(phi_d) + phi_d * re(phi_h)
        return delta * re(phi_h), numerator

    def solve_with_conjugate(self,
                             eq: LinearEquation,
                             tol: Optional[float] = None,
                             summation: Optional[Summation] = None) -> SolveReport:
        """
        Split q = x0 + x with x pure imaginary; x solves the merged equation
        with right-hand side d - x0 h, and Re(x) = 0 fixes x0 = Re(Phi d) / Re(Phi h).

        Raises:
            DegenerateInputError: If |Delta| or |Re(Phi h)| falls below its threshold
        """
        if not eq.has_conjugate:
            return self.solve_general(eq, tol, summation)

        self._say(f"🧮 Closed form with {len(eq.conj_terms)} conjugate terms")
        factor = self.settings.degeneracy if tol is None else tol
        scale = eq.scale()
        delta, phi_d, phi_h, h = self.conjugate_parts(eq, summation)
        det_a = -delta / 3.0
        det_m = -re(phi_h) / 3.0

        if not abs(delta) > factor * scale ** 4:
            raise DegenerateInputError(
                f"Delta = {delta:.3e} is below the degeneracy threshold",
                delta=delta, det_a=det_a, det_m=det_m)
        if not abs(re(phi_h)) > factor * scale ** 3 * h.norm():
            raise DegenerateInputError(
                f"Re(Phi h) = {re(phi_h):.3e} is below the degeneracy threshold",
                delta=delta, det_a=det_a, det_m=det_m)

        x0 = re(phi_d) / re(phi_h)
        q = Quaternion.scalar(x0) + (phi_d - phi_h * x0) / delta
        return self._report(eq, q, delta=delta, det_a=det_a, det_m=det_m)

    def solve(self, eq: LinearEquation, tol: Optional[float] = None) -> SolveReport:
        return self.solve_with_conjugate(eq, tol)


_DEFAULT = ClosedFormSolver()


def delta(eq: LinearEquation, summation: Summation = Summation.NAIVE) -> float:
    return _DEFAULT.delta(eq, summation)


def phi_apply(eq: LinearEquation, v: Quaternion, summation: Summation = Summation.NAIVE) -> Quaternion:
    return _DEFAULT.phi_apply(eq, v, summation)


def phi_as_operator(eq: LinearEquation, summation: Summation = Summation.NAIVE) -> SandwichOperator:
    return _DEFAULT.phi_as_operator(eq, summation)


def solve_general(eq: LinearEquation,
                  tol: Optional[float] = None,
                  summation: Summation = Summation.SYMMETRIC) -> SolveReport:
    return _DEFAULT.solve_general(eq, tol, summation)


def solve_with_conjugate(eq: LinearEquation,
                         tol: Optional[float] = None,
                         summation: Summation = Summation.SYMMETRIC) -> SolveReport:
    return _DEFAULT.solve_with_conjugate(eq, tol, summation)


def phi_terms_list(eq: LinearEquation, summation: Summation = Summation.SYMMETRIC) -> List[SandwichTerm]:
    _require_plain(eq)
    return list(_phi_terms(eq.plain_terms, summation))
