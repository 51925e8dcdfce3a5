from typing import Optional

from src.linalg.LinearEquation import LinearEquation
from src.linalg.RealSystem import assemble_A, assemble_M, det4, gauss_solve
from .BaseSolver import BaseSolver, SolveMethod, SolveReport


class OracleSolver(BaseSolver):
    """
    Reference route: assemble the real 4x4 system and eliminate.
    Shares no code with the closed form beyond quaternion arithmetic.
    """

    method = SolveMethod.ORACLE

    def solve(self, eq: LinearEquation, pivot_factor: Optional[float] = None) -> SolveReport:
        """
        Raises:
            SingularSystemError: If elimination meets a negligible pivot
        """
        factor = self.settings.pivot if pivot_factor is None else pivot_factor
        self._say(f"🔍 Oracle elimination on {len(eq.all_terms())} terms")

        matrix = assemble_M(eq)
        q = gauss_solve(matrix, eq.rhs, factor)

        det_a = det4(assemble_A(eq.merged_plain()))
        det_m = det4(matrix) if eq.has_conjugate else None
        return self._report(eq, q, delta=-3.0 * det_a, det_a=det_a, det_m=det_m)


def solve_oracle(eq: LinearEquation, pivot_factor: Optional[float] = None) -> SolveReport:
    return OracleSolver().solve(eq, pivot_factor)
