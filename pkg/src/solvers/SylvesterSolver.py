from typing import Tuple

from src.algebra.Quaternion import ONE, Quaternion, conj, inv, mul, norm_sq
from src.errors import DegenerateInputError
from src.linalg.LinearEquation import LinearEquation
from src.linalg.RealSystem import assemble_A, det4
from .BaseSolver import BaseSolver, SolveMethod, SolveReport


class SylvesterSolver(BaseSolver):
    """
    Sylvester's equation s q + q t = u.

    Left-multiplying the equation by the operator (s|1) + (1|~t) collapses it to
        (s^2 + t ~t + (t + ~t) s) q = s u + u ~t
    and the bracketed quaternion commutes with s.
    """

    method = SolveMethod.SYLVESTER

    def denominator(self, s: Quaternion, t: Quaternion) -> Quaternion:
        t_bar = conj(t)
        return mul(s, s) + mul(t, t_bar) + mul(t + t_bar, s)

    def solve(self, s: Quaternion, t: Quaternion, u: Quaternion) -> SolveReport:
        """
        Raises:
            DegenerateInputError: If s^2 + t ~t + (t + ~t) s vanishes
        """
        eq = LinearEquation.plain([(s, ONE), (ONE, t)], u)
        det_a = det4(assemble_A(eq))
        denom = self.denominator(s, t)
        scale = (s.norm() + t.norm()) ** 2
        if denom.norm() <= self.settings.degeneracy * max(scale, 1e-300):
            raise DegenerateInputError(
                "Sylvester denominator s^2 + t~t + (t+~t)s vanishes",
                delta=-3.0 * det_a, det_a=det_a)

        self._say(f"🧮 Sylvester solve s={s.to_list()} t={t.to_list()}")
        q = mul(inv(denom), mul(s, u) + mul(u, conj(t)))
        return self._report(eq, q, delta=-3.0 * det_a, det_a=det_a)

    def reduce_three_term(self,
                          c1: Quaternion, b1: Quaternion,
                          c2: Quaternion, b2: Quaternion,
                          d: Quaternion) -> Tuple[Quaternion, Quaternion, Quaternion]:
        """
        Rewrite c1 q b1 + c2 q b2 = d as s q + q t = u with
            s = c2^-1 c1,  t = b2 b1^-1,  u = c2^-1 d b1^-1.

        Raises:
            DegenerateInputError: If c2 or b1 is zero
        """
        if norm_sq(c2) == 0.0 or norm_sq(b1) == 0.0:
            raise DegenerateInputError("Three-term reduction needs c2 != 0 and b1 != 0")
        c2_inv, b1_inv = inv(c2), inv(b1)
        s = mul(c2_inv, c1)
        t = mul(b2, b1_inv)
        u = mul(mul(c2_inv, d), b1_inv)
        return s, t, u

    def solve_three_term(self,
                         c1: Quaternion, b1: Quaternion,
                         c2: Quaternion, b2: Quaternion,
                         d: Quaternion) -> SolveReport:
        """Solve c1 q b1 + c2 q b2 = d through the Sylvester form; residual on the original."""
        s, t, u = self.reduce_three_term(c1, b1, c2, b2, d)
        q = self.solve(s, t, u).q
        eq = LinearEquation.plain([(c1, b1), (c2, b2)], d)
        det_a = det4(assemble_A(eq))
        return self._report(eq, q, delta=-3.0 * det_a, det_a=det_a)


def solve_sylvester(s: Quaternion, t: Quaternion, u: Quaternion) -> SolveReport:
    return SylvesterSolver().solve(s, t, u)


def reduce_three_term(c1: Quaternion, b1: Quaternion,
                      c2: Quaternion, b2: Quaternion,
                      d: Quaternion) -> Tuple[Quaternion, Quaternion, Quaternion]:
    return SylvesterSolver().reduce_three_term(c1, b1, c2, b2, d)
