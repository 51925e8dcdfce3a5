"""
Sandwich Module - the (u|v) operator algebra on quaternions
(u|v) q := u q v. Sums of such terms represent every real-linear map on H,
and each has a 4x4 real matrix acting on the coordinates (w, x, y, z).
"""

from dataclasses import dataclass, field
from typing import Iterable, Tuple

import numpy as np

from src.algebra.Quaternion import Quaternion, ONE, ZERO, basis, mul

Matrix4 = np.ndarray


@dataclass(frozen=True)
class SandwichTerm:
    """One term (left | right)."""

    left: Quaternion
    right: Quaternion

    def apply(self, q: Quaternion) -> Quaternion:
        return mul(mul(self.left, q), self.right)


@dataclass(frozen=True)
class SandwichOperator:
    """
    Ordered sum of sandwich terms. The empty operator is the zero map.
    Term order never changes the result of apply.
    """

    terms: Tuple[SandwichTerm, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Quaternion, Quaternion]]) -> "SandwichOperator":
        return cls(tuple(SandwichTerm(left, right) for left, right in pairs))

    @classmethod
    def identity(cls) -> "SandwichOperator":
        return cls((SandwichTerm(ONE, ONE),))

    @classmethod
    def zero(cls) -> "SandwichOperator":
        return cls(())

    @classmethod
    def left(cls, p: Quaternion) -> "SandwichOperator":
        return cls((SandwichTerm(p, ONE),))

    @classmethod
    def right(cls, p: Quaternion) -> "SandwichOperator":
        return cls((SandwichTerm(ONE, p),))

    def __add__(self, other: "SandwichOperator") -> "SandwichOperator":
        return SandwichOperator(self.terms + other.terms)

    def scaled(self, factor: float) -> "SandwichOperator":
        """Multiply by a real factor (absorbed into the left quaternions)."""
        return SandwichOperator(tuple(SandwichTerm(t.left * factor, t.right) for t in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def apply(self, q: Quaternion) -> Quaternion:
        return apply(self, q)


# ==================== OPERATIONS ====================

def apply(op: SandwichOperator, q: Quaternion) -> Quaternion:
    """Sum of left_t * q * right_t over all terms."""
    total = ZERO
    for term in op.terms:
        total = total + term.apply(q)
    return total


def compose(g: SandwichOperator, f: SandwichOperator) -> SandwichOperator:
    """
    Operator product g o f, term by term:
        (u1|v1)(u2|v2) = (u1 u2 | v2 v1)
    m and n terms give m*n terms; no simplification is attempted.
    """
    return SandwichOperator(tuple(
        SandwichTerm(mul(outer.left, inner.left), mul(inner.right, outer.right))
        for outer in g.terms
        for inner in f.terms
    ))


def to_matrix(op: SandwichOperator) -> Matrix4:
    """Column l holds the coordinates of apply(op, basis_l)."""
    matrix = np.zeros((4, 4))
    for column, unit in enumerate(basis()):
        matrix[:, column] = apply(op, unit).coords()
    return matrix


def left_matrix(p: Quaternion) -> Matrix4:
    """Matrix of q -> p q."""
    w, x, y, z = p.coords()
    return np.array([
        [w, -x, -y, -z],
        [x, w, -z, y],
        [y, z, w, -x],
        [z, -y, x, w],
    ])


def right_matrix(p: Quaternion) -> Matrix4:
    """Matrix of q -> q p."""
    w, x, y, z = p.coords()
    return np.array([
        [w, -x, -y, -z],
        [x, w, z, -y],
        [y, -z, w, x],
        [z, y, -x, w],
    ])


def _unit_term_matrices() -> np.ndarray:
    # (e_i | e_j) matrices are signed permutations, mutually orthogonal
    # under the Frobenius product, each with squared norm 4.
    units = basis()
    table = np.zeros((4, 4, 4, 4))
    for i, left in enumerate(units):
        for j, right in enumerate(units):
            table[i, j] = left_matrix(left) @ right_matrix(right)
    return table


_UNIT_TERMS = _unit_term_matrices()


def from_matrix(matrix: Matrix4) -> SandwichOperator:
    """
    Canonical four-term form (p0|1) + (p1|i) + (p2|j) + (p3|k) of a real 4x4 matrix.
    The coefficient of e_i inside p_j is <M, mat(e_i|e_j)>_F / 4.
    """
    m = np.asarray(matrix, dtype=float)
    coeffs = np.einsum("ab,ijab->ij", m, _UNIT_TERMS) / 4.0
    units = basis()
    terms = []
    for j in range(4):
        p_j = Quaternion(*(float(c) for c in coeffs[:, j]))
        terms.append(SandwichTerm(p_j, units[j]))
    return SandwichOperator(tuple(terms))


def compress(op: SandwichOperator) -> SandwichOperator:
    """Re-canonicalize through the matrix form."""
    return from_matrix(to_matrix(op))


def matrix_equal(a: SandwichOperator, b: SandwichOperator, tol: float = 1e-12) -> bool:
    ma, mb = to_matrix(a), to_matrix(b)
    scale = max(1.0, float(np.max(np.abs(mb))))
    return bool(np.max(np.abs(ma - mb)) <= tol * scale)
