from src.algebra.Quaternion import Quaternion, inv, mul, norm_sq
from src.errors import DegenerateInputError
from src.linalg.LinearEquation import LinearEquation
from .BaseSolver import BaseSolver, SolveMethod, SolveReport


class TwoTermSolver(BaseSolver):
    """
    c q b = d, solved as q = c^-1 d b^-1 when c b != 0.
    """

    method = SolveMethod.TWO_TERM

    def solve(self, c: Quaternion, b: Quaternion, d: Quaternion) -> SolveReport:
        """
        Raises:
            DegenerateInputError: If c or b is zero
        """
        n_c, n_b = norm_sq(c), norm_sq(b)
        if n_c * n_b == 0.0:
            raise DegenerateInputError("Two-term equation needs c != 0 and b != 0")

        self._say(f"🧮 Two-term solve c={c.to_list()} b={b.to_list()}")
        q = mul(mul(inv(c), d), inv(b))

        # the real system of q -> c q b is |c||b| times a rotation
        det_a = (n_c * n_b) ** 2
        eq = LinearEquation.plain([(c, b)], d)
        return self._report(eq, q, delta=-3.0 * det_a, det_a=det_a)


def solve_two_term(c: Quaternion, b: Quaternion, d: Quaternion) -> SolveReport:
    return TwoTermSolver().solve(c, b, d)
