"""
Random quaternions for the test suite: hypothesis strategies for algebraic
identities and seeded numpy draws for oracle corpora.
"""
import numpy as np
from hypothesis import strategies as st

from src.algebra.Quaternion import Quaternion
from src.linalg.LinearEquation import LinearEquation
from src.linalg.RealSystem import assemble_A, assemble_M

COND_MAX = 1e6

# magnitudes below 1e-6 collapse to 0
coordinates = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False).map(
    lambda v: 0.0 if abs(v) < 1e-6 else v)

quaternions = st.builds(Quaternion, coordinates, coordinates, coordinates, coordinates)

nonzero_quaternions = quaternions.filter(lambda q: q.norm() > 1e-3)


def random_quaternion(rng: np.random.Generator) -> Quaternion:
    return Quaternion(*(float(v) for v in rng.uniform(-1.0, 1.0, 4)))


def random_equation(rng: np.random.Generator, n: int, conj: int = 0) -> LinearEquation:
    plain = [(random_quaternion(rng), random_quaternion(rng)) for _ in range(n)]
    conjugate = [(random_quaternion(rng), random_quaternion(rng)) for _ in range(conj)]
    return LinearEquation(tuple(plain), tuple(conjugate), random_quaternion(rng))


def well_conditioned(eq: LinearEquation) -> bool:
    matrices = [assemble_A(eq.merged_plain())]
    if eq.conj_terms:
        matrices.append(assemble_M(eq))
    return all(np.linalg.cond(m) < COND_MAX for m in matrices)


def corpus(seed: int, count: int, n_values, conj: int = 0):
    """Yield `count` well-conditioned random equations, cycling through n_values."""
    rng = np.random.default_rng(seed)
    n_values = list(n_values)
    produced = 0
    attempts = 0
    while produced < count:
        n = n_values[attempts % len(n_values)]
        attempts += 1
        eq = random_equation(rng, n, conj)
        if well_conditioned(eq):
            produced += 1
            yield eq


def rel_error(a: Quaternion, b: Quaternion) -> float:
    return (a - b).max_abs() / max(1.0, b.max_abs())
