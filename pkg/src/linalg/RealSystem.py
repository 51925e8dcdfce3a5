"""
RealSystem Module - the associated real 4x4 linear system
Assembles A (and M for equations with conjugate terms), solves it by
Gaussian elimination as the independent oracle, and evaluates the closed
formulas for det(A) and adj(A) in terms of the revised starting form.
"""

from itertools import product
from typing import List

import numpy as np

from src.algebra.Quaternion import Quaternion, ZERO, basis, bracket4, conj, dot, norm_sq, tri_dual_conj
from src.algebra.Sandwich import Matrix4, SandwichOperator, SandwichTerm, to_matrix
from src.errors import SingularSystemError
from src.linalg.LinearEquation import LinearEquation, RevisedForm

DEFAULT_PIVOT_FACTOR = 1e-12


# ==================== ASSEMBLY ====================

def revised_form(eq: LinearEquation) -> RevisedForm:
    """a_i = sum_p b_pi c_p, where b_pi is coordinate i of b_p."""
    if eq.conj_terms:
        raise ValueError("revised_form needs an equation without conjugate terms")
    slots = [ZERO, ZERO, ZERO, ZERO]
    for c, b in eq.plain_terms:
        for index, weight in enumerate(b.coords()):
            slots[index] = slots[index] + c * weight
    return RevisedForm(*slots)


def sandwich_of(eq: LinearEquation) -> SandwichOperator:
    """The operator sum (c_p | b_p) over the plain terms."""
    return SandwichOperator.of(eq.plain_terms)


def revised_operator(rf: RevisedForm) -> SandwichOperator:
    """(a0|1) + (a1|i) + (a2|j) + (a3|k)."""
    return SandwichOperator.of(zip(rf.coefficients(), basis()))


def assemble_A(eq: LinearEquation) -> Matrix4:
    """Matrix of q -> sum c q b, built by applying the operator to 1, i, j, k."""
    if eq.conj_terms:
        raise ValueError("assemble_A needs an equation without conjugate terms")
    return to_matrix(sandwich_of(eq))


def assemble_M(eq: LinearEquation) -> Matrix4:
    """Matrix of the full left-hand side, conjugate terms included."""
    matrix = np.zeros((4, 4))
    for column, unit in enumerate(basis()):
        matrix[:, column] = eq.evaluate(unit).coords()
    return matrix


def express_A(rf: RevisedForm) -> Matrix4:
    """Entry-by-entry table of A in the coordinates a_li of the revised form."""
    a = np.array([q.coords() for q in rf.coefficients()])
    return np.array([
        [a[0, 0] - a[1, 1] - a[2, 2] - a[3, 3], -a[0, 1] - a[1, 0] - a[2, 3] + a[3, 2],
         -a[0, 2] + a[1, 3] - a[2, 0] - a[3, 1], -a[0, 3] - a[1, 2] + a[2, 1] - a[3, 0]],
        [a[0, 1] + a[1, 0] - a[2, 3] + a[3, 2], a[0, 0] - a[1, 1] + a[2, 2] + a[3, 3],
         -a[0, 3] - a[1, 2] - a[2, 1] + a[3, 0], a[0, 2] - a[1, 3] - a[2, 0] - a[3, 1]],
        [a[0, 2] + a[1, 3] + a[2, 0] - a[3, 1], a[0, 3] - a[1, 2] - a[2, 1] - a[3, 0],
         a[0, 0] + a[1, 1] - a[2, 2] + a[3, 3], -a[0, 1] + a[1, 0] - a[2, 3] - a[3, 2]],
        [a[0, 3] - a[1, 2] + a[2, 1] + a[3, 0], -a[0, 2] - a[1, 3] + a[2, 0] - a[3, 1],
         a[0, 1] - a[1, 0] - a[2, 3] - a[3, 2], a[0, 0] + a[1, 1] + a[2, 2] - a[3, 3]],
    ])


# ==================== ORACLE ====================

def gauss_solve(matrix: Matrix4, d: Quaternion, pivot_factor: float = DEFAULT_PIVOT_FACTOR) -> Quaternion:
    """
    Solve M phi(q) = phi(d) by elimination with partial pivoting.

    Raises:
        SingularSystemError: If a pivot magnitude is at most pivot_factor times
            the largest initial entry magnitude
    """
    a = np.hstack([np.array(matrix, dtype=float), np.array(d.coords(), dtype=float).reshape(4, 1)])
    rank = 4
    threshold = pivot_factor * float(np.max(np.abs(a[:, :rank])))

    for i in range(rank):
        max_row = i + int(np.argmax(np.abs(a[i:, i])))
        pivot = a[max_row, i]
        if not abs(pivot) > threshold:
            raise SingularSystemError(
                f"Pivot {pivot:.3e} in column {i} below threshold {threshold:.3e}", pivot=float(pivot))
        if max_row != i:
            a[[i, max_row]] = a[[max_row, i]]
        for j in range(i + 1, rank):
            factor = a[j, i] / a[i, i]
            a[j, i:] -= factor * a[i, i:]

    x = [0.0] * rank
    for j in reversed(range(rank)):
        tail = sum(a[j, k] * x[k] for k in range(j + 1, rank))
        x[j] = float((a[j, rank] - tail) / a[j, j])
    return Quaternion(*x)


def det4(matrix: Matrix4) -> float:
    """Determinant by pivoted LU."""
    return float(np.linalg.det(np.asarray(matrix, dtype=float)))


def adjugate4(matrix: Matrix4) -> Matrix4:
    """Transpose of the cofactor matrix; M adj(M) = det(M) I."""
    m = np.asarray(matrix, dtype=float)
    adj = np.zeros((4, 4))
    for i, j in product(range(4), repeat=2):
        minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
        adj[j, i] = (-1.0) ** (i + j) * np.linalg.det(minor)
    return adj


def frobenius_scale(matrix: Matrix4) -> float:
    return float(np.linalg.norm(np.asarray(matrix, dtype=float)))


def is_singular(matrix: Matrix4, factor: float = DEFAULT_PIVOT_FACTOR) -> bool:
    """|det| below factor times the fourth power of the Frobenius norm."""
    return not abs(det4(matrix)) >= factor * frobenius_scale(matrix) ** 4


# ==================== CLOSED FORMULAS ====================

def det_formula(rf: RevisedForm) -> float:
    """
    det(A) = 2 sum_ij (a_i . a_j)^2 - (sum_i a_i . a_i)^2 - 8 [a0 a1 a2 a3]
    """
    a = rf.coefficients()
    gram = [[dot(a[i], a[j]) for j in range(4)] for i in range(4)]
    squares = sum(gram[i][j] ** 2 for i in range(4) for j in range(4))
    trace = sum(gram[i][i] for i in range(4))
    return 2.0 * squares - trace ** 2 - 8.0 * bracket4(*a)


def _weighted_conj_sum(a: List[Quaternion], i: int) -> Quaternion:
    # sum_l (a_i . a_l) conj(a_l)
    total = ZERO
    for a_l in a:
        total = total + conj(a_l) * dot(a[i], a_l)
    return total


def adj_formula(rf: RevisedForm) -> SandwichOperator:
    """
    Adjugate of A as a four-term sandwich operator:
        (2 D123 + 2 S0 - L ~a0 | 1) - (-2 D023 + 2 S1 - L ~a1 | i)
      - (2 D013 + 2 S2 - L ~a2 | j) - (-2 D012 + 2 S3 - L ~a3 | k)
    with L = sum |a_l|^2, S_i = sum_l (a_i . a_l) ~a_l and D_pqr the dual of
    the conjugated triple (tri_dual_conj).
    """
    a = list(rf.coefficients())
    lam = sum(norm_sq(a_l) for a_l in a)
    one, i, j, k = basis()

    def slot(index: int, dual_sign: float, p: int, q: int, r: int) -> Quaternion:
        return (tri_dual_conj(a[p], a[q], a[r]) * (2.0 * dual_sign)
                + _weighted_conj_sum(a, index) * 2.0
                - conj(a[index]) * lam)

    return SandwichOperator((
        SandwichTerm(slot(0, 1.0, 1, 2, 3), one),
        SandwichTerm(-slot(1, -1.0, 0, 2, 3), i),
        SandwichTerm(-slot(2, 1.0, 0, 1, 3), j),
        SandwichTerm(-slot(3, -1.0, 0, 1, 2), k),
    ))
