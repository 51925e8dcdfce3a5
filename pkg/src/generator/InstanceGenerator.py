"""
InstanceGenerator Module - seeded random equations with known solutions
Coefficients are drawn uniformly from [-1, 1] by SplitMix64 so that a seed
reproduces the same instance in any language.
"""

from dataclasses import dataclass
from typing import List

from src.algebra.Quaternion import Quaternion
from src.linalg.LinearEquation import LinearEquation

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """64-bit SplitMix generator."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def next_symmetric(self) -> float:
        """Uniform double in [-1, 1)."""
        return 2.0 * self.next_unit() - 1.0

    def next_quaternion(self) -> Quaternion:
        return Quaternion(*(self.next_symmetric() for _ in range(4)))


@dataclass(frozen=True)
class GeneratedInstance:
    seed: int
    equation: LinearEquation
    truth: Quaternion


class InstanceGenerator:
    """
    Draw order per instance: each plain term c then b, each conjugate term
    c then b, then the ground-truth q; the rhs is the left-hand side at q.
    """

    def generate(self, seed: int, n: int, conj: int = 0) -> GeneratedInstance:
        """
        Raises:
            ValueError: If n or conj is negative or both are zero
        """
        if n < 0 or conj < 0:
            raise ValueError(f"Term counts must be non-negative (n={n}, conj={conj})")
        if n + conj < 1:
            raise ValueError("An instance needs at least one term")

        rng = SplitMix64(seed)
        plain: List = [(rng.next_quaternion(), rng.next_quaternion()) for _ in range(n)]
        conjugate: List = [(rng.next_quaternion(), rng.next_quaternion()) for _ in range(conj)]
        truth = rng.next_quaternion()

        shell = LinearEquation(tuple(plain), tuple(conjugate))
        return GeneratedInstance(seed=seed, equation=shell.with_rhs(shell.evaluate(truth)), truth=truth)


def generate(seed: int, n: int, conj: int = 0) -> GeneratedInstance:
    return InstanceGenerator().generate(seed, n, conj)
