"""
Quaternion Module - Hamilton quaternions over IEEE doubles
Provides the value type plus the derived products used by the closed-form solver:
inner product, 4-bracket and triple dual.
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from src.errors import DegenerateInputError

Real = Union[int, float]


@dataclass(frozen=True)
class Quaternion:
    """
    Immutable quaternion w + x i + y j + z k.
    No normalization is ever applied implicitly.
    """

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    # ==================== CONSTRUCTION ====================

    @classmethod
    def from_list(cls, values: Sequence[Real]) -> "Quaternion":
        """
        Build a quaternion from a [w, x, y, z] sequence.

        Raises:
            ValueError: If the sequence does not hold exactly four numbers
        """
        if len(values) != 4:
            raise ValueError(f"Quaternion needs 4 coordinates, got {len(values)}")
        return cls(float(values[0]), float(values[1]), float(values[2]), float(values[3]))

    @classmethod
    def scalar(cls, value: Real) -> "Quaternion":
        return cls(float(value), 0.0, 0.0, 0.0)

    def to_list(self) -> List[float]:
        return [self.w, self.x, self.y, self.z]

    def coords(self) -> Tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    # ==================== ARITHMETIC ====================

    def __add__(self, other: "Quaternion") -> "Quaternion":
        if isinstance(other, (int, float)):
            other = Quaternion.scalar(other)
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        if isinstance(other, (int, float)):
            other = Quaternion.scalar(other)
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other: Real) -> "Quaternion":
        return Quaternion.scalar(other) - self

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: Union["Quaternion", Real]) -> "Quaternion":
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return mul(self, other)

    def __rmul__(self, other: Real) -> "Quaternion":
        # only reached for scalar * quaternion
        return Quaternion(other * self.w, other * self.x, other * self.y, other * self.z)

    def __truediv__(self, other: Real) -> "Quaternion":
        if not isinstance(other, (int, float)):
            return NotImplemented
        return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)

    # ==================== DERIVED VALUES ====================

    def conj(self) -> "Quaternion":
        return conj(self)

    def norm_sq(self) -> float:
        return norm_sq(self)

    def norm(self) -> float:
        return math.sqrt(norm_sq(self))

    def max_abs(self) -> float:
        """Largest coordinate magnitude; NaN if any coordinate is NaN."""
        values = [abs(v) for v in self.coords()]
        return math.nan if any(math.isnan(v) for v in values) else max(values)

    def is_close(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        """Componentwise comparison with tolerance relative to max(1, |other|)."""
        return (self - other).max_abs() <= tol * max(1.0, other.max_abs())

    def __iter__(self):
        return iter(self.coords())

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def basis() -> Tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
    """The ordered basis 1, i, j, k."""
    return (ONE, I, J, K)


# ==================== PRIMITIVE OPERATIONS ====================

def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product with i^2 = j^2 = k^2 = ijk = -1."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def mul_all(factors: Iterable[Quaternion]) -> Quaternion:
    result = ONE
    for factor in factors:
        result = mul(result, factor)
    return result


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def re(q: Quaternion) -> float:
    """Scalar part as a plain real."""
    return q.w


def im(q: Quaternion) -> Quaternion:
    return Quaternion(0.0, q.x, q.y, q.z)


def norm_sq(q: Quaternion) -> float:
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z


def inv(q: Quaternion) -> Quaternion:
    """
    Multiplicative inverse conj(q) / |q|^2.

    Raises:
        DegenerateInputError: If q is the zero quaternion
    """
    n = norm_sq(q)
    if n == 0.0:
        raise DegenerateInputError("Cannot invert the zero quaternion")
    return conj(q) / n


# ==================== INNER PRODUCT & BRACKETS ====================

def dot(a: Quaternion, b: Quaternion) -> float:
    """Euclidean inner product of the coordinate vectors; equals Re(a conj(b))."""
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z


def bracket4(a1: Quaternion, a2: Quaternion, a3: Quaternion, a4: Quaternion) -> float:
    """
    Determinant of the 4x4 coordinate matrix with rows a1..a4, computed from
    four quaternion products:
        -1/4 Re(a1 ~a2 a3 ~a4 + a4 ~a3 a2 ~a1 - a4 ~a1 a2 ~a3 - a3 ~a2 a1 ~a4)
    where ~ is conjugation.
    """
    c1, c2, c3, c4 = conj(a1), conj(a2), conj(a3), conj(a4)
    total = (
        re(mul(mul(a1, c2), mul(a3, c4)))
        + re(mul(mul(a4, c3), mul(a2, c1)))
        - re(mul(mul(a4, c1), mul(a2, c3)))
        - re(mul(mul(a3, c2), mul(a1, c4)))
    )
    return -0.25 * total


def tri_dual(a1: Quaternion, a2: Quaternion, a3: Quaternion) -> Quaternion:
    """
    Quaternion image of the dual (right product by I4 = e0e1e2e3) of the
    3-blade a1 ^ a2 ^ a3:  (a1 ~a2 a3 - a3 ~a2 a1) / 2.
    With this orientation tri_dual(i, j, k) = 1.
    """
    c2 = conj(a2)
    return (mul(mul(a1, c2), a3) - mul(mul(a3, c2), a1)) * 0.5


def tri_dual_conj(a1: Quaternion, a2: Quaternion, a3: Quaternion) -> Quaternion:
    """The dual built from the conjugated arguments: -conj(tri_dual(a1, a2, a3))."""
    return -conj(tri_dual(a1, a2, a3))


def alt_product(factors: Sequence[Quaternion]) -> Quaternion:
    """Alternating-conjugate product a1 ~a2 a3 ~a4 ... (odd positions conjugated)."""
    return mul_all(conj(factor) if index % 2 else factor for index, factor in enumerate(factors))
