"""
BenchmarkRunner Module - wall-clock scaling of the solve routes in the term count
"""

import time
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from src.generator.InstanceGenerator import generate
from src.linalg.LinearEquation import LinearEquation
from src.linalg.RealSystem import assemble_A
from src.solvers.BaseSolver import SolveReport, Summation
from src.solvers.ClosedFormSolver import ClosedFormSolver
from src.solvers.OracleSolver import OracleSolver
from src.utils.config import SolverSettings

CSV_COLUMNS = ["n", "method", "median_ns", "residual_max"]
METHODS = ("closed_naive", "closed_sym", "oracle")
MAX_DRAWS = 32
RESEED_STRIDE = 1_000_003


class BenchmarkRunner:
    """
    Times closed_naive, closed_sym and oracle on one seeded instance per n.
    Draws whose A has a condition number above cond_max are replaced by the
    next draw in the seed sequence seed + n + attempt * RESEED_STRIDE.
    """

    def __init__(self, settings: Optional[SolverSettings] = None, seed: int = 0):
        self.settings = settings or SolverSettings()
        self.seed = seed
        closed = ClosedFormSolver(settings=self.settings)
        oracle = OracleSolver(settings=self.settings)
        self.routes: Dict[str, Callable[[LinearEquation], SolveReport]] = {
            "closed_naive": lambda eq: closed.solve_general(eq, summation=Summation.NAIVE),
            "closed_sym": lambda eq: closed.solve_general(eq, summation=Summation.SYMMETRIC),
            "oracle": oracle.solve,
        }

    def draw(self, n: int) -> LinearEquation:
        """
        First well-conditioned instance with n terms.

        Raises:
            ValueError: If MAX_DRAWS consecutive draws are ill-conditioned
        """
        for attempt in range(MAX_DRAWS):
            eq = generate(self.seed + n + attempt * RESEED_STRIDE, n).equation
            cond = float(np.linalg.cond(assemble_A(eq)))
            if np.isfinite(cond) and cond <= self.settings.cond_max:
                return eq
        raise ValueError(f"No instance with n={n} below cond_max={self.settings.cond_max} "
                         f"in {MAX_DRAWS} draws")

    def time_route(self, method: str, eq: LinearEquation, reps: int) -> Dict:
        route = self.routes[method]
        timings: List[int] = []
        residuals: List[float] = []
        for _ in range(reps):
            start = time.perf_counter_ns()
            report = route(eq)
            timings.append(time.perf_counter_ns() - start)
            residuals.append(report.residual)
        return {
            "method": method,
            "median_ns": float(pd.Series(timings).median()),
            "residual_max": float(max(residuals))
        }

    def run(self, n_max: int, reps: int) -> pd.DataFrame:
        """
        One row per (n, method) for n = 1 .. n_max + 1.

        Raises:
            ValueError: If n_max or reps is below 1, or no well-conditioned
                instance is found for some n
        """
        if n_max < 1 or reps < 1:
            raise ValueError(f"n_max and reps must be at least 1 (n_max={n_max}, reps={reps})")

        rows = []
        for n in range(1, n_max + 2):
            eq = self.draw(n)
            for method in METHODS:
                row = self.time_route(method, eq, reps)
                rows.append({"n": n, **row})
        return pd.DataFrame(rows, columns=CSV_COLUMNS)


def run_benchmark(n_max: int, reps: int, settings: Optional[SolverSettings] = None, seed: int = 0) -> pd.DataFrame:
    return BenchmarkRunner(settings, seed).run(n_max, reps)
