"""
ReportFormatter Module
Formats solve, verify and bench results as console text.
Templates come from report_templates/*.txt when present, else the defaults.
"""

from pathlib import Path
from typing import Dict, List, Optional

from colorama import Fore, Style

from src.solvers.BaseSolver import SolveReport


class ReportFormatter:
    """
    Turns report objects into the text printed by the CLI.
    """

    DEFAULT_TEMPLATES = {
        "solve": """{method:<12} q = {q}
{blank:<12} Δ = {delta}   det(A) = {det_a}{det_m_part}
{blank:<12} residual = {residual}""",
        "verify": """VERIFICATION SUMMARY
- Cases run: {cases}
- Cases skipped (ill-conditioned or degenerate): {skipped}
- Failed checks: {failures}
- Worst closed/oracle discrepancy: {discrepancy}
- Worst lift residual: {lift}""",
        "bench": """BENCHMARK
- Rows: {rows}
- Largest n: {n_max}
- Output: {path}"""
    }

    def __init__(self, templates_dir: Optional[str] = None, color: bool = True):
        """
        Args:
            templates_dir: Directory with solve.txt / verify.txt / bench.txt overrides
            color: Colour PASS/FAIL verdicts with colorama
        """
        self.color = color
        self.templates = dict(self.DEFAULT_TEMPLATES)
        if templates_dir:
            self._load_templates(Path(templates_dir))

    def _load_templates(self, directory: Path) -> None:
        for name in self.DEFAULT_TEMPLATES:
            filepath = directory / f"{name}.txt"
            if filepath.exists():
                try:
                    with open(filepath, 'r', encoding='utf-8') as f:
                        self.templates[name] = f.read()
                except OSError as e:
                    print(f"⚠️  Error loading {filepath.name}: {str(e)}, using default")

    @staticmethod
    def _number(value: Optional[float]) -> str:
        return "N/A" if value is None else f"{value:.6e}"

    def verdict(self, passed: bool, label: Optional[str] = None) -> str:
        text = label or ("PASS" if passed else "FAIL")
        if not self.color:
            return text
        return f"{Fore.GREEN if passed else Fore.RED}{text}{Style.RESET_ALL}"

    # ==================== SOLVE ====================

    def format_solve(self, report: SolveReport) -> str:
        det_m_part = f"   det(M) = {self._number(report.det_m)}" if report.det_m is not None else ""
        return self.templates["solve"].format(
            method=report.method.value,
            blank="",
            q=[float(v) for v in report.q.to_list()],
            delta=self._number(report.delta),
            det_a=self._number(report.det_a),
            det_m_part=det_m_part,
            residual=self._number(report.residual)
        )

    def format_discrepancy(self, discrepancy: float, tol: float) -> str:
        passed = discrepancy <= tol
        return f"Cross-route discrepancy: {discrepancy:.3e} (tol {tol:.1e}) {self.verdict(passed)}"

    # ==================== VERIFY ====================

    def format_verify(self, summary: Dict) -> str:
        columns = summary["aggregate"]["columns"]
        text = self.templates["verify"].format(
            cases=summary["cases"],
            skipped=summary["skipped"],
            failures=len(summary["failures"]),
            discrepancy=self._number(columns["discrepancy"]["max"]),
            lift=self._number(columns["lift_residual"]["max"])
        )
        lines: List[str] = [text, ""]
        for name, row in sorted(summary["aggregate"]["checks"].items()):
            lines.append(f"  {name:<30} max error {row['max_error']:.3e}  {self.verdict(row['passed'])}")
        for failure in summary["failures"]:
            lines.append(f"  ❌ seed {failure['seed']}: {failure['check']} "
                         f"({failure['max_error']:.3e} > {failure['tol']:.1e})")
        return "\n".join(lines)

    # ==================== BENCH ====================

    def format_bench(self, rows: int, n_max: int, path: str) -> str:
        return self.templates["bench"].format(rows=rows, n_max=n_max, path=path)
