from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

from src.algebra.Quaternion import Quaternion
from src.linalg.LinearEquation import LinearEquation
from src.utils.config import SolverSettings


class SolveMethod(str, Enum):
    """Route that produced a solution."""
    CLOSED_FORM = "ClosedForm"
    ORACLE = "Oracle"
    SYLVESTER = "Sylvester"
    TWO_TERM = "TwoTerm"


class Summation(str, Enum):
    """How Delta and Phi are summed."""
    NAIVE = "naive"          # literal ordered quadruple / triple loops
    SYMMETRIC = "symmetric"  # sorted index sets times permutation counts


@dataclass(frozen=True)
class SolveReport:
    """
    Outcome of one solve. The residual is always recomputed from the
    original equation, never inferred from internal quantities.
    """

    q: Quaternion
    delta: Optional[float]
    det_a: Optional[float]
    residual: float
    method: SolveMethod
    det_m: Optional[float] = None

    def to_dict(self) -> Dict:
        return {
            "q": self.q.to_list(),
            "delta": self.delta,
            "det_a": self.det_a,
            "det_m": self.det_m,
            "residual": self.residual,
            "method": self.method.value
        }


class BaseSolver:
    """Base class for all solvers"""

    method = SolveMethod.CLOSED_FORM

    def __init__(self, settings: Optional[SolverSettings] = None, verbose: bool = False):
        """
        Args:
            settings: Tolerances; defaults when omitted
            verbose: Print one progress line per solve
        """
        self.settings = settings or SolverSettings()
        self.verbose = verbose

    def _say(self, message: str) -> None:
        if self.verbose:
            print(message)

    def _report(self,
                eq: LinearEquation,
                q: Quaternion,
                delta: Optional[float],
                det_a: Optional[float],
                det_m: Optional[float] = None) -> SolveReport:
        residual = eq.residual(q)
        self._say(f"  ✅ {self.method.value}: q = {q.to_list()} | residual {residual:.3e}")
        return SolveReport(q=q, delta=delta, det_a=det_a, residual=residual,
                           method=self.method, det_m=det_m)
