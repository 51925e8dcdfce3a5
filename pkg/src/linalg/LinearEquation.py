"""
Linear quaternionic equations
    sum_p c_p q b_p - sum_r c_r conj(q) b_r = d
and the revised starting form a0 q + a1 q i + a2 q j + a3 q k.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from src.algebra.Quaternion import Quaternion, ZERO, basis, conj, mul

Term = Tuple[Quaternion, Quaternion]


@dataclass(frozen=True)
class LinearEquation:
    """
    plain_terms hold (c, b) pairs acting on q, conj_terms (c, b) pairs acting
    on conj(q) with a minus sign, rhs is d.
    """

    plain_terms: Tuple[Term, ...] = field(default_factory=tuple)
    conj_terms: Tuple[Term, ...] = field(default_factory=tuple)
    rhs: Quaternion = ZERO

    def __post_init__(self):
        object.__setattr__(self, "plain_terms", tuple(tuple(t) for t in self.plain_terms))
        object.__setattr__(self, "conj_terms", tuple(tuple(t) for t in self.conj_terms))
        if not self.plain_terms and not self.conj_terms:
            raise ValueError("A linear equation needs at least one term")

    @classmethod
    def plain(cls, terms: Sequence[Term], rhs: Quaternion) -> "LinearEquation":
        return cls(tuple(terms), (), rhs)

    @property
    def has_conjugate(self) -> bool:
        return bool(self.conj_terms)

    def all_terms(self) -> Tuple[Term, ...]:
        return self.plain_terms + self.conj_terms

    def with_rhs(self, rhs: Quaternion) -> "LinearEquation":
        return LinearEquation(self.plain_terms, self.conj_terms, rhs)

    def merged_plain(self, rhs: Quaternion = None) -> "LinearEquation":
        """Every term applied to q directly (the equation satisfied by Im(q))."""
        return LinearEquation(self.all_terms(), (), self.rhs if rhs is None else rhs)

    def h(self) -> Quaternion:
        """sum of c b over plain terms minus the same over conjugate terms."""
        total = ZERO
        for c, b in self.plain_terms:
            total = total + mul(c, b)
        for c, b in self.conj_terms:
            total = total - mul(c, b)
        return total

    def evaluate(self, q: Quaternion) -> Quaternion:
        """Left-hand side at q."""
        total = ZERO
        for c, b in self.plain_terms:
            total = total + mul(mul(c, q), b)
        if self.conj_terms:
            q_bar = conj(q)
            for c, b in self.conj_terms:
                total = total - mul(mul(c, q_bar), b)
        return total

    def residual(self, q: Quaternion) -> float:
        """Max-norm of LHS(q) - d, always recomputed from the coefficients."""
        return (self.evaluate(q) - self.rhs).max_abs()

    def scale(self) -> float:
        """sum of |c||b| over all terms; Delta is homogeneous of degree 4 in it."""
        return sum(c.norm() * b.norm() for c, b in self.all_terms())

    def residual_scale(self, q: Quaternion) -> float:
        """Natural magnitude of LHS(q) and d, used to make residuals relative."""
        return max(self.scale() * q.norm() + self.rhs.norm(), math.ulp(1.0))

    def to_dict(self) -> Dict:
        return {
            "terms": [{"c": c.to_list(), "b": b.to_list()} for c, b in self.plain_terms],
            "conj_terms": [{"c": c.to_list(), "b": b.to_list()} for c, b in self.conj_terms],
            "rhs": self.rhs.to_list()
        }


@dataclass(frozen=True)
class RevisedForm:
    """a0 q + a1 q i + a2 q j + a3 q k."""

    a0: Quaternion
    a1: Quaternion
    a2: Quaternion
    a3: Quaternion

    def coefficients(self) -> Tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return (self.a0, self.a1, self.a2, self.a3)

    def evaluate(self, q: Quaternion) -> Quaternion:
        total = ZERO
        for a, unit in zip(self.coefficients(), basis()):
            total = total + mul(mul(a, q), unit)
        return total


def terms_from_lists(pairs: List[Tuple[Sequence[float], Sequence[float]]]) -> Tuple[Term, ...]:
    return tuple((Quaternion.from_list(c), Quaternion.from_list(b)) for c, b in pairs)
