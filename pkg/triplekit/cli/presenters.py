"""
Presentation functions for CLI output.

All print_* functions for Rich console output.
"""

import numpy as np
from rich.console import Console
from rich.panel import Panel
from rich.rule import Rule
from rich.table import Table
from rich.theme import Theme

from triplekit.engine import FactorDescriptor, ReconstructionReport

TRIPLEKIT_THEME = Theme(
    {
        "tk.accent": "bold #5B8DEF",
        "tk.meta": "dim",
        "tk.value": "#E0B15A",
        "tk.pass": "green",
        "tk.fail": "bold red",
    }
)

BORDER_COLOR = "#5B8DEF"

# Shared console instance with the triplekit theme
console = Console(theme=TRIPLEKIT_THEME)

# Errors go to stderr so stdout stays clean for JSON
error_console = Console(theme=TRIPLEKIT_THEME, stderr=True)


def _verdict(passed: bool) -> str:
    return "[tk.pass]PASS[/tk.pass]" if passed else "[tk.fail]FAIL[/tk.fail]"


def format_complex(value: complex) -> str:
    value = complex(value)
    return f"{value.real:.6g}{value.imag:+.6g}i"


def format_matrix(matrix: np.ndarray) -> str:
    """Rows of a small complex matrix, one per line."""
    rows = []
    for row in np.atleast_2d(matrix):
        rows.append("  ".join(f"{format_complex(v):>22}" for v in row))
    return "\n".join(rows)


def print_error(message: str) -> None:
    error_console.print(f"[tk.fail]Error:[/tk.fail] {message}")


def print_factor_info(factor: FactorDescriptor) -> None:
    """Complex dimension, rank and unitary existence for a factor."""
    table = Table(title=str(factor), show_header=True, header_style="bold")
    table.add_column("Property", style="tk.meta")
    table.add_column("Value", style="tk.value")
    table.add_row("complex dimension", str(factor.complex_dim))
    table.add_row("rank", str(factor.rank))
    table.add_row("unitary tripotent", "yes" if factor.has_unitary else "no")
    table.add_row("reconstruction route", "yes" if factor.supports_reconstruction else "no")
    if factor.is_sum:
        table.add_row("summands", ", ".join(str(c) for c in factor.components))
    console.print(table)


def print_check_result(predicate: str, passed: bool, report: dict) -> None:
    console.print(f"[tk.accent]{predicate}[/tk.accent]: {_verdict(passed)}")
    if "classification" in report:
        info = report["classification"]
        console.print(
            f"  [tk.meta]kind[/tk.meta] {info['kind']}  "
            f"[tk.meta]rank[/tk.meta] {info['rank']}  "
            f"[tk.meta]Peirce dims[/tk.meta] {tuple(info['dims'])}"
        )


def print_reconstruction(report: ReconstructionReport, threshold: float) -> None:
    """Summary of a reconstruction run."""
    passed = report.max_residual <= threshold
    console.print()
    console.print(Rule(f"Reconstruction {report.source} -> {report.target}", style=BORDER_COLOR))
    console.print(f"  [tk.meta]λ0[/tk.meta]        {format_complex(report.lambda0)}")
    console.print(f"  [tk.meta]branch[/tk.meta]    {report.branch.value}")
    if report.routing is not None:
        console.print(f"  [tk.meta]routing[/tk.meta]   {list(report.routing)}")
        for index, block in enumerate(report.blocks):
            console.print(
                f"    [tk.meta]block {index}[/tk.meta] {block.source} -> {block.target}: "
                f"{block.branch.value}, residual {block.max_residual:.3e}"
            )
    if report.square_form is not None:
        console.print(f"  [tk.meta]form[/tk.meta]      {report.square_form}")
    console.print(f"  [tk.meta]samples[/tk.meta]   {report.n_samples}")
    console.print(
        f"  [tk.meta]residual[/tk.meta]  {report.max_residual:.3e} "
        f"(threshold {threshold:.1e})  {_verdict(passed)}"
    )
    console.print(Rule(style=BORDER_COLOR))


def print_lorentz_demo(demo: dict) -> None:
    """Panels for the input state, its boost and the polar part."""
    console.print(
        Panel(
            format_matrix(demo["state"]),
            title=f"ϱ for b = {tuple(demo['direction'])}",
            border_style=BORDER_COLOR,
        )
    )
    console.print(
        Panel(
            format_matrix(demo["boosted"]),
            title=f"boost χ = {demo['rapidity']} along axis {demo['axis']}",
            border_style=BORDER_COLOR,
        )
    )
    table = Table(show_header=True, header_style="bold")
    table.add_column("", style="tk.meta")
    table.add_column("before", style="tk.value")
    table.add_column("after", style="tk.value")
    table.add_row("determinant", format_complex(demo["det_before"]), format_complex(demo["det_after"]))
    table.add_row("is_tripotent", str(demo["tripotent_before"]), str(demo["tripotent_after"]))
    console.print(table)
    console.print(Panel(format_matrix(demo["polar"]), title="polar part", border_style=BORDER_COLOR))


def print_selftest_summary(results: list[dict], timings: dict[str, float]) -> None:
    """Per-suite verdicts, residual maxima and timings."""
    table = Table(title="Self-test", show_header=True, header_style="bold")
    table.add_column("Suite", style="tk.accent")
    table.add_column("Result")
    table.add_column("Max residual", justify="right")
    table.add_column("Checks", justify="right")
    table.add_column("Time (s)", justify="right", style="tk.meta")
    for result in results:
        table.add_row(
            result["name"],
            _verdict(result["passed"]),
            f"{result['max_residual']:.3e}",
            str(result["checks"]),
            f"{timings.get(result['name'], 0.0):.2f}",
        )
    console.print(table)
    for result in results:
        for failure in result["failures"]:
            console.print(f"  [tk.fail]{result['name']}[/tk.fail]: {failure}")
