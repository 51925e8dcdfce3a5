"""
Main Entry Point for the quaternion equation solver
Subcommands: solve (file -> solution), gen (seeded instance), verify (identity
suite), bench (timing CSV).
Location: main.py (root of project)
"""

import argparse
import json
import sys
from typing import List, Optional

from colorama import init as colorama_init

from src.algebra.Quaternion import Quaternion
from src.bench.BenchmarkRunner import BenchmarkRunner
from src.errors import DegenerateInputError, SingularSystemError
from src.generator.InstanceGenerator import InstanceGenerator
from src.reports.ReportFormatter import ReportFormatter
from src.solvers.ClosedFormSolver import ClosedFormSolver
from src.solvers.OracleSolver import OracleSolver
from src.storage.EquationStore import EquationStore, dumps_equation
from src.utils.config import SolverSettings, ValidationError, load_settings
from src.utils.logger import ActionType, log_experiment, set_log_file
from src.verify.VerificationSuite import VerificationSuite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEGENERATE = 2
EXIT_VIOLATION = 3

TRUTH_TOL = 1e-8


def _error(message: str) -> None:
    print(message, file=sys.stderr)


class SolverCLI:
    """
    Runs one subcommand and maps its outcome to an exit code:
    0 success, 1 input/config error, 2 degenerate or singular system,
    3 identity violation, route disagreement or truth mismatch.
    """

    def __init__(self, settings: SolverSettings, color: bool = True):
        self.settings = settings
        self.store = EquationStore()
        self.formatter = ReportFormatter(color=color)

    # ==================== SOLVE ====================

    def cmd_solve(self, args: argparse.Namespace) -> int:
        tol = args.tol if args.tol is not None else self.settings.solver_tol
        read_result = self.store.read_equation(args.input)
        if not read_result["success"]:
            _error(f"❌ {read_result['error']}")
            self._log(ActionType.SOLVE, "N/A", args.input, read_result["error"], "FAILURE")
            return EXIT_INPUT

        eq = read_result["equation"]
        routes = {
            "closed": lambda: ClosedFormSolver(settings=self.settings).solve_with_conjugate(eq),
            "oracle": lambda: OracleSolver(settings=self.settings).solve(eq),
        }
        selected = ["closed", "oracle"] if args.method == "both" else [args.method]

        try:
            reports = [routes[name]() for name in selected]
        except (DegenerateInputError, SingularSystemError) as e:
            _error(f"❌ {type(e).__name__}: {e}")
            details = e.to_dict() if isinstance(e, DegenerateInputError) else {"pivot": e.pivot}
            self._log(ActionType.SOLVE, args.method, args.input, str(e), "FAILURE", **details)
            return EXIT_DEGENERATE

        exit_code = EXIT_OK
        discrepancy = None
        if len(reports) == 2:
            closed_q, oracle_q = reports[0].q, reports[1].q
            discrepancy = (closed_q - oracle_q).max_abs() / max(1.0, oracle_q.max_abs())
            if not discrepancy <= tol:
                exit_code = EXIT_VIOLATION

        truth_error = None
        if args.check_truth:
            truth: Optional[Quaternion] = read_result["truth"]
            if truth is None:
                _error("❌ --check-truth needs a 'truth' field in the equation file")
                return EXIT_INPUT
            truth_error = max((r.q - truth).max_abs() / max(1.0, truth.max_abs()) for r in reports)
            if not truth_error <= max(tol, TRUTH_TOL):
                exit_code = EXIT_VIOLATION

        if args.json:
            for report in reports:
                payload = report.to_dict()
                if discrepancy is not None:
                    payload["discrepancy"] = discrepancy
                if truth_error is not None:
                    payload["truth_error"] = truth_error
                print(json.dumps(payload))
        else:
            for report in reports:
                print(self.formatter.format_solve(report))
            if discrepancy is not None:
                print(self.formatter.format_discrepancy(discrepancy, tol))
            if truth_error is not None:
                print(f"Truth error: {truth_error:.3e} {self.formatter.verdict(exit_code == EXIT_OK)}")

        if exit_code == EXIT_VIOLATION:
            _error(f"❌ Routes or truth disagree beyond tolerance {tol:.1e}")
        self._log(ActionType.SOLVE, args.method, args.input,
                  [r.to_dict() for r in reports], "SUCCESS" if exit_code == EXIT_OK else "FAILURE",
                  discrepancy=discrepancy, truth_error=truth_error)
        return exit_code

    # ==================== GEN ====================

    def cmd_gen(self, args: argparse.Namespace) -> int:
        summary = f"seed={args.seed} n={args.n} conj={args.conj}"
        try:
            instance = InstanceGenerator().generate(args.seed, args.n, args.conj)
        except ValueError as e:
            _error(f"❌ {e}")
            self._log(ActionType.GENERATE, "N/A", summary, str(e), "FAILURE")
            return EXIT_INPUT

        if args.out is None:
            sys.stdout.write(dumps_equation(instance.equation, instance.truth))
        else:
            write_result = self.store.write_equation(args.out, instance.equation, instance.truth)
            if not write_result["success"]:
                _error(f"❌ {write_result['error']}")
                self._log(ActionType.GENERATE, "N/A", summary, write_result["error"], "FAILURE")
                return EXIT_INPUT
            print(f"✅ Wrote {write_result['path']}")

        self._log(ActionType.GENERATE, "N/A", summary, instance.truth.to_list(), "SUCCESS")
        return EXIT_OK

    # ==================== VERIFY ====================

    def cmd_verify(self, args: argparse.Namespace) -> int:
        summary = f"seed={args.seed} cases={args.cases} n_max={args.n_max}"
        if args.cases < 0 or args.n_max < 1 or args.workers < 1:
            _error("❌ --cases must be >= 0, --n-max and --workers >= 1")
            return EXIT_INPUT

        if not args.json:
            print("=" * 70)
            print("🔬 VERIFICATION STARTED")
            print("=" * 70)
        report = VerificationSuite(self.settings).run(args.seed, args.cases, args.n_max, workers=args.workers)
        result = report.to_dict()

        if args.json:
            print(json.dumps(result))
        else:
            print(self.formatter.format_verify(result))

        for failure in result["failures"]:
            _error(f"❌ seed {failure['seed']}: {failure['check']}")
        status = "SUCCESS" if report.passed else "FAILURE"
        self._log(ActionType.VERIFY, "ClosedForm+Oracle", summary,
                  {"passed": report.passed, "skipped": report.skipped, "failures": result["failures"]}, status)
        return EXIT_OK if report.passed else EXIT_VIOLATION

    # ==================== BENCH ====================

    def cmd_bench(self, args: argparse.Namespace) -> int:
        summary = f"n_max={args.n_max} reps={args.reps}"
        try:
            table = BenchmarkRunner(self.settings, seed=args.seed).run(args.n_max, args.reps)
        except ValueError as e:
            _error(f"❌ {e}")
            self._log(ActionType.BENCH, "N/A", summary, str(e), "FAILURE")
            return EXIT_INPUT
        except (DegenerateInputError, SingularSystemError) as e:
            _error(f"❌ {type(e).__name__}: {e}")
            self._log(ActionType.BENCH, "N/A", summary, str(e), "FAILURE")
            return EXIT_DEGENERATE

        write_result = self.store.write_csv(args.csv, table)
        if not write_result["success"]:
            _error(f"❌ {write_result['error']}")
            self._log(ActionType.BENCH, "N/A", summary, write_result["error"], "FAILURE")
            return EXIT_INPUT

        print(self.formatter.format_bench(write_result["rows"], args.n_max + 1, write_result["path"]))
        self._log(ActionType.BENCH, "closed_naive+closed_sym+oracle", summary,
                  {"rows": write_result["rows"], "csv": write_result["path"]}, "SUCCESS")
        return EXIT_OK

    # ==================== LOGGING ====================

    @staticmethod
    def _log(action: ActionType, method: str, input_summary, outcome, status: str, **extra) -> None:
        details = {"input_summary": input_summary, "outcome": outcome}
        details.update({k: v for k, v in extra.items() if v is not None})
        log_experiment(component="CLI", method=method, action=action, details=details, status=status)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Quaternion Solver - basis-free solutions of linear quaternionic equations"
    )
    parser.add_argument("--env-file", default=None, help="Alternative .env file")
    parser.add_argument("--no-color", action="store_true", help="Disable coloured verdicts")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Solve the equation in a JSON file")
    solve.add_argument("input", help="Equation file")
    solve.add_argument("--method", choices=["closed", "oracle", "both"], default="closed")
    solve.add_argument("--tol", type=float, default=None,
                       help="Route agreement tolerance (default: QSOLVE_SOLVER_TOL)")
    solve.add_argument("--json", action="store_true", help="One JSON object per report")
    solve.add_argument("--check-truth", action="store_true", help="Compare against the file's 'truth'")

    gen = sub.add_parser("gen", help="Generate a seeded random instance")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--n", type=int, default=3, help="Number of plain terms")
    gen.add_argument("--conj", type=int, default=0, help="Number of conjugate terms")
    gen.add_argument("--out", default=None, help="Output path (stdout when omitted)")

    verify = sub.add_parser("verify", help="Run the identity suite over seeded cases")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--cases", type=int, default=100)
    verify.add_argument("--n-max", type=int, default=8)
    verify.add_argument("--json", action="store_true")
    verify.add_argument("--workers", type=int, default=1)

    bench = sub.add_parser("bench", help="Time the solve routes against the term count")
    bench.add_argument("--n-max", type=int, default=8)
    bench.add_argument("--reps", type=int, default=5)
    bench.add_argument("--csv", default="bench.csv")
    bench.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)

    try:
        settings = load_settings(args.env_file)
    except ValidationError as e:
        _error(f"❌ ERROR: invalid QSOLVE_* configuration\n{e}")
        return EXIT_INPUT
    set_log_file(settings.log_file)

    colorama_init()
    cli = SolverCLI(settings, color=not args.no_color)
    commands = {
        "solve": cli.cmd_solve,
        "gen": cli.cmd_gen,
        "verify": cli.cmd_verify,
        "bench": cli.cmd_bench,
    }
    return commands[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
