"""
Clifford4 Module - the Clifford algebra CL(R^4) with Euclidean signature
Multivectors hold 16 coefficients indexed by blade bitmask over e0..e3
(bit l <-> e_l). A blade coefficient refers to ascending factor order, so
mask 0b0011 is e0e1 and mask 0b1111 is I4 = e0e1e2e3.

Used as an independent oracle for the quaternionic identities: phi embeds
H into the vectors, pi projects the whole algebra back onto H.
"""

from typing import Iterable, List, Sequence

import numpy as np

from src.algebra.Quaternion import Quaternion
from src.errors import InvalidGradeError

DIM = 4
BLADES = 1 << DIM
PSEUDOSCALAR_MASK = BLADES - 1


def grade_of(mask: int) -> int:
    return bin(mask).count("1")


def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the factors of blade a * blade b into ascending order."""
    a >>= 1
    swaps = 0
    while a:
        swaps += grade_of(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def _build_tables():
    xor = np.zeros((BLADES, BLADES), dtype=np.intp)
    sign = np.zeros((BLADES, BLADES))
    outer = np.zeros((BLADES, BLADES))
    for a in range(BLADES):
        for b in range(BLADES):
            xor[a, b] = a ^ b
            # Euclidean metric: every e_l squares to +1
            sign[a, b] = _reorder_sign(a, b)
            outer[a, b] = sign[a, b] if (a & b) == 0 else 0.0
    return xor, sign, outer


_XOR, _GP_SIGN, _OP_SIGN = _build_tables()
_GRADES = np.array([grade_of(mask) for mask in range(BLADES)])
_REVERSE_SIGN = np.array([(-1.0) ** (g * (g - 1) // 2) for g in _GRADES])

# iota: H = <1, e23, e13, e12> -> quaternions, 1 -> 1, e23 -> -i, e13 -> j, e12 -> -k
_MASK_E23 = 0b1100
_MASK_E13 = 0b1010
_MASK_E12 = 0b0110


class Multivector:
    """
    Element of CL(R^4). Treated as an immutable value: every operation
    returns a new instance.
    """

    __slots__ = ("coeff",)

    def __init__(self, coeff: Iterable[float] = None):
        values = np.zeros(BLADES) if coeff is None else np.array(coeff, dtype=float)
        if values.shape != (BLADES,):
            raise ValueError(f"Multivector needs {BLADES} coefficients, got shape {values.shape}")
        values.setflags(write=False)
        self.coeff = values

    # ==================== CONSTRUCTION ====================

    @classmethod
    def blade(cls, mask: int, value: float = 1.0) -> "Multivector":
        values = np.zeros(BLADES)
        values[mask] = value
        return cls(values)

    @classmethod
    def scalar(cls, value: float) -> "Multivector":
        return cls.blade(0, value)

    @classmethod
    def vector(cls, coords: Sequence[float]) -> "Multivector":
        values = np.zeros(BLADES)
        for index, value in enumerate(coords):
            values[1 << index] = value
        return cls(values)

    def to_list(self) -> List[float]:
        return [float(v) for v in self.coeff]

    # ==================== ARITHMETIC ====================

    def __add__(self, other: "Multivector") -> "Multivector":
        return Multivector(self.coeff + other.coeff)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return Multivector(self.coeff - other.coeff)

    def __neg__(self) -> "Multivector":
        return Multivector(-self.coeff)

    def __mul__(self, factor: float) -> "Multivector":
        if isinstance(factor, Multivector):
            return gp(self, factor)
        return Multivector(self.coeff * factor)

    def __rmul__(self, factor: float) -> "Multivector":
        return Multivector(self.coeff * factor)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeff)))

    def is_close(self, other: "Multivector", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.coeff - other.coeff)) <= tol * max(1.0, other.max_abs()))

    def is_even(self) -> bool:
        return not np.any(self.coeff[_GRADES % 2 == 1])

    def is_odd(self) -> bool:
        return not np.any(self.coeff[_GRADES % 2 == 0])

    def __repr__(self) -> str:
        parts = [f"{v:+g}*b{mask:04b}" for mask, v in enumerate(self.coeff) if v != 0.0]
        return "Multivector(" + (" ".join(parts) if parts else "0") + ")"


I4 = Multivector.blade(PSEUDOSCALAR_MASK)
E0 = Multivector.blade(0b0001)
ONE = Multivector.scalar(1.0)


# ==================== PRODUCTS ====================

def _signed_product(a: Multivector, b: Multivector, signs: np.ndarray) -> Multivector:
    out = np.zeros(BLADES)
    np.add.at(out, _XOR, signs * np.outer(a.coeff, b.coeff))
    return Multivector(out)


def gp(a: Multivector, b: Multivector) -> Multivector:
    """Geometric (Clifford) product."""
    return _signed_product(a, b, _GP_SIGN)


def op(a: Multivector, b: Multivector) -> Multivector:
    """Outer (exterior) product."""
    return _signed_product(a, b, _OP_SIGN)


def gp_all(elements: Iterable[Multivector]) -> Multivector:
    result = ONE
    for element in elements:
        result = gp(result, element)
    return result


def wedge_all(elements: Iterable[Multivector]) -> Multivector:
    result = ONE
    for element in elements:
        result = op(result, element)
    return result


def grade(a: Multivector, k: int) -> Multivector:
    """
    The k-graded part of a.

    Raises:
        InvalidGradeError: If k is outside 0..4
    """
    if not 0 <= k <= DIM:
        raise InvalidGradeError(f"Grade {k} outside 0..{DIM}")
    return Multivector(np.where(_GRADES == k, a.coeff, 0.0))


def reverse(a: Multivector) -> Multivector:
    return Multivector(a.coeff * _REVERSE_SIGN)


def cl_conj(a: Multivector) -> Multivector:
    """Conjugate e0 A e0."""
    return gp(E0, gp(a, E0))


def dual(a: Multivector) -> Multivector:
    """Right product by the pseudoscalar I4."""
    return gp(a, I4)


def _require_vector(a: Multivector, tol: float = 0.0) -> None:
    off_grade = np.abs(a.coeff[_GRADES != 1])
    limit = tol * max(1.0, a.max_abs())
    if off_grade.size and float(np.max(off_grade)) > limit:
        raise InvalidGradeError("Expected a grade-1 multivector")


def bracket(x1: Multivector, x2: Multivector, x3: Multivector, x4: Multivector) -> float:
    """
    Scalar dual of x1 ^ x2 ^ x3 ^ x4, i.e. its I4 coefficient; equal to the
    determinant of the coordinate rows.

    Raises:
        InvalidGradeError: If any argument is not a vector
    """
    for x in (x1, x2, x3, x4):
        _require_vector(x)
    return float(wedge_all((x1, x2, x3, x4)).coeff[PSEUDOSCALAR_MASK])


# ==================== MAPS TO AND FROM H ====================

def phi(q: Quaternion) -> Multivector:
    """1, i, j, k -> e0, e1, e2, e3."""
    return Multivector.vector(q.coords())


def phi_inv(v: Multivector, tol: float = 1e-12) -> Quaternion:
    """
    Inverse of phi.

    Raises:
        InvalidGradeError: If v carries non-vector components beyond tol
    """
    _require_vector(v, tol)
    return Quaternion(float(v.coeff[0b0001]), float(v.coeff[0b0010]),
                      float(v.coeff[0b0100]), float(v.coeff[0b1000]))


def iota(a: Multivector) -> Quaternion:
    """Isomorphism from H = <1, e23, e13, e12> onto the quaternions (other blades ignored)."""
    return Quaternion(float(a.coeff[0]), -float(a.coeff[_MASK_E23]),
                      float(a.coeff[_MASK_E13]), -float(a.coeff[_MASK_E12]))


_PI_RIGHT = gp(ONE + E0, ONE - I4)


def pi(a: Multivector) -> Quaternion:
    """Projection onto H: iota of the H-part of A (1 + e0)(1 - I4)."""
    return iota(gp(a, _PI_RIGHT))


def tri_dual_oracle(a1: Quaternion, a2: Quaternion, a3: Quaternion) -> Quaternion:
    """phi^-1 of the dual of phi(a1) ^ phi(a2) ^ phi(a3)."""
    return phi_inv(dual(wedge_all((phi(a1), phi(a2), phi(a3)))))


# ==================== LIFTED EQUATION ====================

def lift_residual(eq, q: Quaternion) -> Multivector:
    """
    (sum phi(c) conj(phi(q)) phi(b) - phi(d)) (1 + I4) for an equation without
    conjugate terms. Vanishes exactly when q solves the equation; pi of the
    residual equals twice the quaternionic defect.
    """
    if eq.conj_terms:
        raise ValueError("lift_residual needs an equation without conjugate terms")
    lifted_q = cl_conj(phi(q))
    total = Multivector()
    for c, b in eq.plain_terms:
        total = total + gp(gp(phi(c), lifted_q), phi(b))
    return gp(total - phi(eq.rhs), ONE + I4)
