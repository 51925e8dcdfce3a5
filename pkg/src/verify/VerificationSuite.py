"""
VerificationSuite Module - named identity checks over seeded random instances
Each case draws an equation from its seed, solves it by the closed form and by
elimination, and runs every algebraic and solver identity as a named check.
Case reports are aggregated with pandas.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

import src.algebra.Clifford4 as cl
import src.algebra.Quaternion as qt
from src.algebra.Quaternion import Quaternion
from src.algebra.Sandwich import compose, to_matrix
from src.errors import DegenerateInputError, SingularSystemError
from src.generator.InstanceGenerator import SplitMix64, generate
from src.linalg.LinearEquation import LinearEquation
from src.linalg.RealSystem import (adj_formula, adjugate4, assemble_A, assemble_M, det4,
                                   det_formula, frobenius_scale, is_singular, revised_form,
                                   sandwich_of)
from src.solvers.BaseSolver import Summation
from src.solvers.ClosedFormSolver import ClosedFormSolver
from src.solvers.OracleSolver import OracleSolver
from src.solvers.SylvesterSolver import SylvesterSolver
from src.utils.config import SolverSettings

ROUTE_TOL = 1e-8
ADJ_TOL = 1e-9
DUAL_PATH_TOL = 1e-11
LIFT_TOL = 1e-10
ALGEBRA_SEED_SALT = 0xA5A5A5A5

# Images of the 16 basis blades under pi: mask -> (sign, unit index in 1, i, j, k)
PI_BLADE_TABLE = {
    0b0000: (1.0, 0), 0b0001: (1.0, 0), 0b1110: (1.0, 0), 0b1111: (-1.0, 0),
    0b0010: (1.0, 1), 0b0011: (-1.0, 1), 0b1100: (-1.0, 1), 0b1101: (-1.0, 1),
    0b0100: (1.0, 2), 0b0101: (-1.0, 2), 0b1010: (1.0, 2), 0b1011: (1.0, 2),
    0b1000: (1.0, 3), 0b1001: (-1.0, 3), 0b0110: (-1.0, 3), 0b0111: (-1.0, 3),
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_error: float
    tol: float

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class CaseReport:
    """One verify case; every number is recomputed from the drawn instance."""

    seed: int
    n: int
    conj: int
    skipped: bool = False
    skip_reason: Optional[str] = None
    cond: Optional[float] = None
    delta: Optional[float] = None
    det_a: Optional[float] = None
    det_m: Optional[float] = None
    discrepancy: Optional[float] = None
    residual_closed: Optional[float] = None
    residual_oracle: Optional[float] = None
    lift_residual: Optional[float] = None
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["checks"] = [c.to_dict() for c in self.checks]
        return data


def _diff(a: Quaternion, b: Quaternion) -> float:
    return (a - b).max_abs()


def _rel(error: float, scale: float) -> float:
    return error / max(scale, 1e-300)


def _check(name: str, error: float, tol: float) -> CheckResult:
    return CheckResult(name=name, passed=bool(error <= tol) and not math.isnan(error),
                       max_error=float(error), tol=tol)


def _unit(q: Quaternion) -> Quaternion:
    return q / q.norm() if q.norm() > 0 else qt.ONE


def _random_multivector(rng: SplitMix64, parity: Optional[str] = None) -> cl.Multivector:
    coeff = np.array([rng.next_symmetric() for _ in range(cl.BLADES)])
    if parity is not None:
        keep = np.array([cl.grade_of(m) % 2 == (0 if parity == "even" else 1) for m in range(cl.BLADES)])
        coeff = np.where(keep, coeff, 0.0)
    return cl.Multivector(coeff)


class VerificationSuite:
    """
    Runs the identity suite over the case matrix
        seed = base_seed + k,  n = 1 + ((k div 2) mod n_max),
    so each term count appears once plain and once with a conjugate term
    (one conjugate term and n - 1 plain terms on odd k).
    """

    def __init__(self, settings: Optional[SolverSettings] = None):
        self.settings = settings or SolverSettings()
        self.closed = ClosedFormSolver(settings=self.settings)
        self.oracle = OracleSolver(settings=self.settings)
        self.sylvester = SylvesterSolver(settings=self.settings)

    # ==================== CASE MATRIX ====================

    @staticmethod
    def case_shape(k: int, n_max: int) -> Dict:
        n = 1 + ((k // 2) % max(n_max, 1))
        if k % 2:
            return {"plain": n - 1, "conj": 1, "n": n}
        return {"plain": n, "conj": 0, "n": n}

    # ==================== ALGEBRAIC CHECKS ====================

    def algebra_checks(self, seed: int, draws: int = 2) -> List[CheckResult]:
        """Quaternion, sandwich and Clifford identities on random draws from the seed."""
        rng = SplitMix64(seed ^ ALGEBRA_SEED_SALT)
        tol = self.settings.identity_tol
        worst: Dict[str, float] = {}

        def record(name: str, error: float) -> None:
            worst[name] = max(worst.get(name, 0.0), error)

        for _ in range(draws):
            a = [rng.next_quaternion() for _ in range(5)]
            vectors = [cl.phi(x) for x in a]
            norms4 = math.prod(x.norm() for x in a[:4])
            norms3 = math.prod(x.norm() for x in a[:3])

            coords = np.array([x.coords() for x in a[:4]])
            record("bracket_vs_determinant",
                   _rel(abs(qt.bracket4(*a[:4]) - float(np.linalg.det(coords))), norms4))
            record("bracket_vs_clifford",
                   _rel(abs(qt.bracket4(*a[:4]) - cl.bracket(*vectors[:4])), norms4))
            record("bracket_conjugate_sign",
                   _rel(abs(qt.bracket4(*(qt.conj(x) for x in a[:4])) + qt.bracket4(*a[:4])), norms4))
            record("tri_dual_vs_clifford_dual",
                   _rel(_diff(qt.tri_dual(*a[:3]), cl.tri_dual_oracle(*a[:3])), norms3))
            record("tri_dual_conj_identity",
                   _rel(_diff(qt.tri_dual_conj(*a[:3]), qt.tri_dual(*(qt.conj(x) for x in a[:3]))), norms3))
            record("inner_product_vs_clifford",
                   _rel(abs(qt.dot(a[0], a[1]) - float(cl.gp(vectors[0], vectors[1]).coeff[0])),
                        a[0].norm() * a[1].norm()))

            for r in range(1, 6):
                lhs = cl.pi(cl.gp_all(vectors[:r]))
                rhs = qt.alt_product(a[:r])
                record("alternating_product", _rel(_diff(lhs, rhs), math.prod(x.norm() for x in a[:r])))
            record("pi_phi_identity", _diff(cl.pi(vectors[0]), a[0]) / max(1.0, a[0].norm()))

            even, odd, other = (_random_multivector(rng, "even"), _random_multivector(rng, "odd"),
                                _random_multivector(rng))
            scale = max(1.0, max(even.max_abs(), odd.max_abs()) * other.max_abs() * 16)
            record("pi_homomorphism",
                   _diff(cl.pi(cl.gp(even, other)), qt.mul(cl.pi(even), cl.pi(other))) / scale)
            record("pi_homomorphism",
                   _diff(cl.pi(cl.gp(odd, other)), qt.mul(cl.pi(odd), cl.pi(cl.cl_conj(other)))) / scale)

            for k in (1, 2):
                odd_product = cl.gp_all(vectors[:2 * k + 1])
                odd_reversed = cl.gp_all(reversed(vectors[:2 * k + 1]))
                even_product = cl.gp_all(vectors[:2 * k])
                even_reversed = cl.gp_all(reversed(vectors[:2 * k]))
                size = math.prod(x.norm() for x in a[:2 * k + 1])
                record("grade_identities",
                       ((cl.grade(odd_product, 1) * 2.0) - (odd_product + odd_reversed)).max_abs() / size)
                record("grade_identities",
                       ((cl.grade(odd_product, 3) * 2.0) - (odd_product - odd_reversed)).max_abs() / size)
                record("grade_identities",
                       ((cl.grade(even_product, 0) + cl.grade(even_product, 4)) * 2.0
                        - (even_product + even_reversed)).max_abs() / size)
                record("grade_identities",
                       ((cl.grade(even_product, 2) * 2.0) - (even_product - even_reversed)).max_abs() / size)

        record("pi_kernel_table", self._pi_table_error())
        record("k_minus_annihilation", max(
            cl.pi(cl.gp(cl.Multivector.blade(1 << l), cl.ONE - cl.I4)).max_abs() for l in range(cl.DIM)))

        return [_check(name, error, tol) for name, error in worst.items()]

    @staticmethod
    def _pi_table_error() -> float:
        units = qt.basis()
        return max(
            _diff(cl.pi(cl.Multivector.blade(mask)), units[index] * sign)
            for mask, (sign, index) in PI_BLADE_TABLE.items()
        )

    # ==================== SOLVER CHECKS ====================

    def _plain_checks(self, eq: LinearEquation, truth: Quaternion, rng: SplitMix64, report: CaseReport) -> None:
        settings = self.settings
        matrix = assemble_A(eq)
        fro = frobenius_scale(matrix)
        det_a = det4(matrix)
        adj = adjugate4(matrix)
        scale = eq.scale()
        checks = report.checks

        closed = self.closed.solve_general(eq, summation=Summation.SYMMETRIC)
        oracle = self.oracle.solve(eq)
        report.delta, report.det_a = closed.delta, det_a
        report.residual_closed, report.residual_oracle = closed.residual, oracle.residual
        report.discrepancy = _diff(closed.q, oracle.q) / max(1.0, oracle.q.max_abs())

        checks.append(_check("oracle_equivalence", report.discrepancy, ROUTE_TOL))
        checks.append(_check("closed_residual", _rel(closed.residual, eq.residual_scale(closed.q)),
                             settings.solver_tol))
        checks.append(_check("truth_recovery", _diff(closed.q, truth) / max(1.0, truth.max_abs()), ROUTE_TOL))
        checks.append(_check("delta_vs_det", _rel(abs(closed.delta + 3.0 * det_a), 3.0 * fro ** 4),
                             settings.solver_tol))

        rf = revised_form(eq)
        checks.append(_check("det_formula", _rel(abs(det_formula(rf) - det_a), fro ** 4), settings.solver_tol))
        checks.append(_check("adj_formula",
                             _rel(float(np.max(np.abs(to_matrix(adj_formula(rf)) - adj))), fro ** 3), ADJ_TOL))

        phi_op = self.closed.phi_as_operator(eq)
        checks.append(_check("phi_vs_adjugate",
                             _rel(float(np.max(np.abs(to_matrix(phi_op) + 3.0 * adj))), 3.0 * fro ** 3),
                             ROUTE_TOL))
        product = to_matrix(compose(phi_op, sandwich_of(eq)))
        checks.append(_check("compose_identity",
                             _rel(float(np.max(np.abs(product - closed.delta * np.eye(4)))), 3.0 * fro ** 4),
                             ROUTE_TOL))

        naive_delta = self.closed.delta(eq, Summation.NAIVE)
        naive_phi = self.closed.phi_apply(eq, eq.rhs, Summation.NAIVE)
        sym_phi = self.closed.phi_apply(eq, eq.rhs, Summation.SYMMETRIC)
        dual_error = max(_rel(abs(naive_delta - closed.delta), scale ** 4),
                         _rel(_diff(naive_phi, sym_phi), scale ** 3 * max(eq.rhs.norm(), 1e-300)))
        checks.append(_check("naive_vs_symmetric", dual_error, DUAL_PATH_TOL))

        lifted = cl.lift_residual(eq, oracle.q).max_abs()
        report.lift_residual = lifted
        perturbed = oracle.q + rng.next_quaternion() * 0.5
        defect = eq.evaluate(perturbed) - eq.rhs
        projected = cl.pi(cl.lift_residual(eq, perturbed)) / 2.0
        lift_error = max(_rel(lifted, eq.residual_scale(oracle.q)),
                         _rel(_diff(projected, defect), eq.residual_scale(perturbed)))
        checks.append(_check("lift_residual", lift_error, LIFT_TOL))

        lam = 0.5 + abs(rng.next_symmetric())
        scaled = LinearEquation.plain([(c * lam, b) for c, b in eq.plain_terms], eq.rhs * lam)
        checks.append(_check("scale_covariance",
                             _diff(self.closed.solve_general(scaled).q, closed.q) / max(1.0, closed.q.max_abs()),
                             settings.solver_tol))

        r = _unit(rng.next_quaternion())
        r_bar = qt.conj(r)

        def rotate(x: Quaternion) -> Quaternion:
            return qt.mul(qt.mul(r, x), r_bar)

        rotated = LinearEquation.plain([(rotate(c), rotate(b)) for c, b in eq.plain_terms], rotate(eq.rhs))
        checks.append(_check("unit_conjugation",
                             _diff(self.closed.solve_general(rotated).q, rotate(closed.q))
                             / max(1.0, closed.q.max_abs()),
                             settings.solver_tol))

        if len(eq.plain_terms) == 2:
            (c1, b1), (c2, b2) = eq.plain_terms
            try:
                via_sylvester = self.sylvester.solve_three_term(c1, b1, c2, b2, eq.rhs).q
                error = _diff(via_sylvester, closed.q) / max(1.0, closed.q.max_abs())
            except DegenerateInputError:
                error = math.inf
            checks.append(_check("sylvester_cross_check", error, settings.solver_tol))

    def _conjugate_checks(self, eq: LinearEquation, truth: Quaternion, report: CaseReport) -> None:
        settings = self.settings
        full = assemble_M(eq)
        fro = frobenius_scale(full)
        det_m = det4(full)
        checks = report.checks

        closed = self.closed.solve_with_conjugate(eq)
        oracle = self.oracle.solve(eq)
        report.delta, report.det_a, report.det_m = closed.delta, closed.det_a, det_m
        report.residual_closed, report.residual_oracle = closed.residual, oracle.residual
        report.discrepancy = _diff(closed.q, oracle.q) / max(1.0, oracle.q.max_abs())

        checks.append(_check("conjugate_oracle_equivalence", report.discrepancy, ROUTE_TOL))
        checks.append(_check("conjugate_residual", _rel(closed.residual, eq.residual_scale(closed.q)),
                             settings.solver_tol))
        checks.append(_check("truth_recovery", _diff(closed.q, truth) / max(1.0, truth.max_abs()), ROUTE_TOL))
        checks.append(_check("det_m_identity", _rel(abs(closed.det_m - det_m), fro ** 4), settings.solver_tol))

    # ==================== DRIVER ====================

    def run_case(self, seed: int, plain: int, conj: int) -> CaseReport:
        instance = generate(seed, plain, conj)
        eq = instance.equation
        report = CaseReport(seed=seed, n=plain + conj, conj=conj)

        matrices = [assemble_A(eq.merged_plain())]
        if conj:
            matrices.append(assemble_M(eq))
        if any(is_singular(m, self.settings.pivot) for m in matrices):
            report.skipped, report.skip_reason = True, "singular"
            return report
        report.cond = max(float(np.linalg.cond(m)) for m in matrices)
        if not np.isfinite(report.cond) or report.cond > self.settings.cond_max:
            report.skipped, report.skip_reason = True, "ill-conditioned"
            return report

        algebra = self.algebra_checks(seed)
        report.checks.extend(algebra)
        rng = SplitMix64(seed + 1)
        try:
            if conj:
                self._conjugate_checks(eq, instance.truth, report)
            else:
                self._plain_checks(eq, instance.truth, rng, report)
        except (DegenerateInputError, SingularSystemError) as e:
            report.skipped, report.skip_reason = True, f"{type(e).__name__}: {e}"
            report.checks = list(algebra)
        return report

    def run(self, base_seed: int, cases: int, n_max: int, workers: int = 1,
            progress: Optional[Callable[[CaseReport], None]] = None) -> "VerifyReport":
        cases_to_run = []
        for k in range(cases):
            shape = self.case_shape(k, n_max)
            cases_to_run.append((base_seed + k, shape["plain"], shape["conj"]))

        if workers > 1 and len(cases_to_run) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(_run_case_job, [(self.settings.model_dump(), s) for s in cases_to_run]))
        else:
            reports = [self.run_case(*s) for s in cases_to_run]

        reports.sort(key=lambda r: r.seed)
        if progress:
            for report in reports:
                progress(report)
        return VerifyReport(reports)


def _run_case_job(job) -> CaseReport:
    settings, case = job
    return VerificationSuite(SolverSettings(**settings)).run_case(*case)


class VerifyReport:
    """Per-case reports plus pandas aggregates."""

    NUMERIC_COLUMNS = ["delta", "det_a", "det_m", "discrepancy", "residual_closed",
                       "residual_oracle", "lift_residual"]

    def __init__(self, cases: Sequence[CaseReport]):
        self.cases = list(cases)

    @property
    def passed(self) -> bool:
        return all(not c.failures for c in self.cases)

    @property
    def skipped(self) -> int:
        return sum(1 for c in self.cases if c.skipped)

    def failures(self) -> List[Dict]:
        return [{"seed": c.seed, "check": f.name, "max_error": f.max_error, "tol": f.tol}
                for c in self.cases for f in c.failures]

    def case_table(self) -> pd.DataFrame:
        rows = [{k: v for k, v in c.to_dict().items() if k != "checks"} for c in self.cases]
        return pd.DataFrame(rows, columns=["seed", "n", "conj", "skipped", "skip_reason", "cond"]
                            + self.NUMERIC_COLUMNS)

    def check_table(self) -> pd.DataFrame:
        rows = [{"seed": c.seed, **f.to_dict()} for c in self.cases for f in c.checks]
        return pd.DataFrame(rows, columns=["seed", "name", "passed", "max_error", "tol"])

    def aggregate(self) -> Dict:
        table = self.case_table()
        active = table[~table["skipped"].astype(bool)]
        summary = {}
        for column in self.NUMERIC_COLUMNS:
            values = pd.to_numeric(active[column], errors="coerce").dropna().abs()
            summary[column] = {
                "max": float(values.max()) if len(values) else None,
                "median": float(values.median()) if len(values) else None
            }
        checks = self.check_table()
        per_check = {}
        if len(checks):
            grouped = checks.groupby("name").agg(max_error=("max_error", "max"), passed=("passed", "all"))
            per_check = {name: {"max_error": float(row.max_error), "passed": bool(row.passed)}
                         for name, row in grouped.iterrows()}
        return {"columns": summary, "checks": per_check}

    def to_dict(self) -> Dict:
        return {
            "cases": len(self.cases),
            "skipped": self.skipped,
            "passed": self.passed,
            "failures": self.failures(),
            "aggregate": self.aggregate(),
            "reports": [c.to_dict() for c in self.cases]
        }


def run_verification(base_seed: int, cases: int, n_max: int,
                     settings: Optional[SolverSettings] = None, workers: int = 1) -> VerifyReport:
    return VerificationSuite(settings).run(base_seed, cases, n_max, workers)
