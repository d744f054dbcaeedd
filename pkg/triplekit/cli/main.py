#!/usr/bin/env python3
"""
triplekit CLI - Cartan factors, tripotent predicates and reconstruction runs.

Usage:
    triplekit factor-info '{"kind": "spin", "dim": 4}'
    triplekit check leq p_zplus.json e0.json
    triplekit reconstruct '{"kind": "rect", "m": 3, "n": 3}' transpose.json
    triplekit tabulate '{"kind": "spin", "dim": 4}' recipe.json --out table.json
    triplekit demo lorentz --rapidity 0.5 --axis z
    triplekit selftest --seed 0

Exit codes: 0 pass, 1 fail, 2 input error.
"""

import logging
from pathlib import Path

import typer
from rich.logging import RichHandler

from triplekit.adapters.json_io import (
    load_element,
    load_factor,
    load_oracle_spec,
    save_oracle_table,
    save_report,
)
from triplekit.cli.constants import (
    AXIS_NAMES,
    EXIT_FAIL,
    EXIT_INPUT_ERROR,
    EXIT_PASS,
    PREDICATE_ARITY,
    SUITE_NAMES,
)
from triplekit.cli.presenters import (
    console,
    error_console,
    print_check_result,
    print_error,
    print_factor_info,
    print_lorentz_demo,
    print_reconstruction,
    print_selftest_summary,
)
from triplekit.cli.runners import run_lorentz_demo, run_selftest
from triplekit.engine import (
    Element,
    OracleRecipe,
    ShapeError,
    Tolerance,
    TripleKitError,
    TripotentOracle,
    classify,
    is_orthogonal,
    is_quadrangle,
    is_trangle,
    is_tripotent,
    leq,
    make_oracle,
    oracle_table,
    reconstruct,
)
from triplekit.settings import load_run_config

app = typer.Typer(
    name="triplekit",
    help="Cartan factors, tripotent calculus and reconstruction of triple isomorphisms.",
    add_completion=False,
    no_args_is_help=True,
)

demo_app = typer.Typer(help="Printed demonstrations.", no_args_is_help=True)
app.add_typer(demo_app, name="demo")


@app.callback()
def setup(
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Show engine debug logs (λ0, branch, routing, residuals).",
    ),
):
    """Cartan factors, tripotent calculus and reconstruction of triple isomorphisms."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=error_console, show_path=False)],
        force=True,
    )


def _input_error(message: str) -> typer.Exit:
    print_error(message)
    return typer.Exit(EXIT_INPUT_ERROR)


def _write(report: dict, out: Path | None) -> None:
    if out is not None:
        save_report(report, out)
        console.print(f"[tk.meta]Report written to {out}[/tk.meta]")


@app.command("factor-info")
def factor_info(
    spec: str = typer.Argument(..., help="Factor spec as inline JSON or a path to a JSON file"),
):
    """
    Print complex dimension, rank and whether a unitary tripotent exists.

    Examples:
        triplekit factor-info '{"kind": "spin", "dim": 4}'
        triplekit factor-info '{"kind": "skew", "n": 5}'
    """
    try:
        factor = load_factor(spec)
    except ValueError as exc:
        raise _input_error(str(exc)) from exc
    print_factor_info(factor)


def _run_predicate(predicate: str, elements: list[Element], tol: Tolerance) -> tuple[bool, dict]:
    """Evaluate a named predicate; returns (passed, report fields)."""
    if predicate == "is-tripotent":
        return is_tripotent(elements[0], tol), {}
    if predicate == "is-orthogonal":
        return is_orthogonal(elements[0], elements[1], tol), {}
    if predicate == "leq":
        return leq(elements[0], elements[1], tol), {}
    if predicate == "is-quadrangle":
        return is_quadrangle(*elements, tol=tol), {}
    if predicate == "is-trangle":
        return is_trangle(*elements, tol=tol), {}
    info = classify(elements[0], tol)
    return True, {
        "classification": {"kind": info.kind.value, "rank": info.rank, "dims": list(info.dims)}
    }


@app.command()
def check(
    predicate: str = typer.Argument(
        ..., help=f"One of: {', '.join(PREDICATE_ARITY)}"
    ),
    files: list[Path] = typer.Argument(..., help="Element JSON files, in predicate order"),
    tol_abs: float | None = typer.Option(None, "--tol-abs", help="Absolute tolerance"),
    tol_rel: float | None = typer.Option(None, "--tol-rel", help="Relative tolerance"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write the JSON report here"),
):
    """
    Run a tripotent predicate on element files.

    Exits 0 when the predicate holds, 1 when it fails (including inputs that
    are not tripotents), 2 on unreadable or mismatched input.

    Examples:
        triplekit check is-tripotent half_e11.json
        triplekit check leq p_zplus.json e0.json
    """
    if predicate not in PREDICATE_ARITY:
        raise _input_error(f"unknown predicate {predicate!r}; expected one of {', '.join(PREDICATE_ARITY)}")
    if len(files) != PREDICATE_ARITY[predicate]:
        raise _input_error(f"{predicate} takes {PREDICATE_ARITY[predicate]} element file(s), got {len(files)}")
    try:
        config = load_run_config(tol_abs=tol_abs, tol_rel=tol_rel)
        elements = [load_element(path) for path in files]
        if len({e.factor for e in elements}) > 1:
            raise ShapeError("elements belong to different factors")
    except ValueError as exc:
        raise _input_error(str(exc)) from exc

    report: dict = {
        "predicate": predicate,
        "files": [str(path) for path in files],
        "tol_abs": config.tol_abs,
        "tol_rel": config.tol_rel,
    }
    try:
        passed, extra = _run_predicate(predicate, elements, config.tolerance())
        report.update(extra)
    except ShapeError as exc:
        raise _input_error(str(exc)) from exc
    except TripleKitError as exc:
        passed = False
        report["error"] = str(exc)
        print_error(str(exc))

    report["passed"] = passed
    print_check_result(predicate, passed, report)
    _write(report, out)
    raise typer.Exit(EXIT_PASS if passed else EXIT_FAIL)


@app.command("reconstruct")
def reconstruct_command(
    factor_spec: str = typer.Argument(..., help="Source factor as inline JSON or a JSON file"),
    oracle_spec: Path = typer.Argument(..., help="Oracle recipe (JSON object) or table (JSON list)"),
    seed: int | None = typer.Option(None, "--seed", help="Seed for recipes without one and for sampling"),
    tol_abs: float | None = typer.Option(None, "--tol-abs", help="Absolute tolerance"),
    tol_rel: float | None = typer.Option(None, "--tol-rel", help="Relative tolerance"),
    samples: int | None = typer.Option(None, "--samples", help="Random tripotents for the extension check"),
    threshold: float | None = typer.Option(None, "--threshold", help="Maximum accepted residual"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write the JSON report here"),
):
    """
    Reconstruct the triple isomorphism behind an oracle and verify it.

    Exits 0 iff the residual against the oracle stays under the threshold;
    a failed construction step exits 1 and names the step.

    A lookup table must list, besides the canonical tripotents:
    spin(d): i e_0, i e_1 and 1/2(e_0 + i e_1);
    rect(m,n): i E_00;
    direct sums: each summand's unit and the entries above, embedded.
    `triplekit tabulate` writes such a table from a recipe.

    Examples:
        triplekit reconstruct '{"kind": "spin", "dim": 4}' phase_recipe.json
        triplekit reconstruct '{"kind": "rect", "m": 3, "n": 3}' transpose.json --out report.json
    """
    try:
        config = load_run_config(seed=seed, tol_abs=tol_abs, tol_rel=tol_rel, threshold=threshold, samples=samples)
        tol = config.tolerance()
        factor = load_factor(factor_spec)
        spec = load_oracle_spec(oracle_spec)
        if isinstance(spec, OracleRecipe):
            oracle = make_oracle(factor, spec, seed=config.seed, tol=tol)
            n_samples = config.sample_count("reconstruction_samples")
        else:
            oracle = TripotentOracle.from_table(spec, tol)
            if oracle.source != factor:
                raise ShapeError(f"oracle table acts on {oracle.source}, not {factor}")
            # a table only answers on its listed tripotents
            n_samples = 0
    except ValueError as exc:
        raise _input_error(str(exc)) from exc

    try:
        report = reconstruct(oracle, tol, n_samples, config.seed)
    except TripleKitError as exc:
        print_error(str(exc))
        _write({"factor": str(factor), "passed": False, "error": str(exc)}, out)
        raise typer.Exit(EXIT_FAIL) from exc

    passed = report.max_residual <= config.threshold
    print_reconstruction(report, config.threshold)
    _write({**report.to_dict(), "passed": passed, "threshold": config.threshold}, out)
    raise typer.Exit(EXIT_PASS if passed else EXIT_FAIL)


@app.command()
def tabulate(
    factor_spec: str = typer.Argument(..., help="Source factor as inline JSON or a JSON file"),
    recipe_spec: Path = typer.Argument(..., help="Oracle recipe (JSON object)"),
    out: Path = typer.Option(..., "--out", "-o", help="Write the lookup table here"),
    seed: int | None = typer.Option(None, "--seed", help="Seed for recipes without one"),
):
    """
    Write the lookup table a table-backed reconstruct needs.

    The table holds the recipe's oracle on every tripotent reconstruction
    asks about.

    Examples:
        triplekit tabulate '{"kind": "spin", "dim": 4}' phase_recipe.json --out table.json
    """
    try:
        config = load_run_config(seed=seed)
        factor = load_factor(factor_spec)
        spec = load_oracle_spec(recipe_spec)
        if not isinstance(spec, OracleRecipe):
            raise ShapeError("tabulate needs an oracle recipe, not a table")
        table = oracle_table(make_oracle(factor, spec, seed=config.seed, tol=config.tolerance()))
    except ValueError as exc:
        raise _input_error(str(exc)) from exc
    save_oracle_table(table, out)
    console.print(f"[tk.meta]{len(table)} entries written to {out}[/tk.meta]")


@demo_app.command("lorentz")
def demo_lorentz(
    rapidity: float = typer.Option(0.5, "--rapidity", "-r", help="Boost rapidity χ"),
    axis: str = typer.Option("z", "--axis", "-a", help="Boost axis: x, y, z (or 1, 2, 3)"),
    direction: tuple[float, float, float] = typer.Option(
        (0.0, 0.0, 1.0), "--direction", "-b", help="Unit Bloch vector b of the spin state"
    ),
):
    """
    Boost a spin state: the determinant survives, tripotency does not.

    Examples:
        triplekit demo lorentz --rapidity 0.5 --axis z --direction 0 0 1
        triplekit demo lorentz -r 0.5 -a z -b 1 0 0
    """
    if axis.lower() not in AXIS_NAMES:
        raise _input_error(f"unknown axis {axis!r}; use x, y, z or 1, 2, 3")
    try:
        demo = run_lorentz_demo(rapidity, AXIS_NAMES[axis.lower()], direction)
    except ValueError as exc:
        raise _input_error(str(exc)) from exc
    print_lorentz_demo(demo)


@app.command()
def selftest(
    seed: int | None = typer.Option(None, "--seed", help="Master seed (default: TRIPLEKIT_SEED or config.yaml)"),
    tol_abs: float | None = typer.Option(None, "--tol-abs", help="Acceptance bound for suite residuals"),
    tol_rel: float | None = typer.Option(None, "--tol-rel", help="Relative tolerance for predicates"),
    samples: int | None = typer.Option(None, "--samples", help="Sample count for every suite"),
    suite: list[str] | None = typer.Option(None, "--suite", "-s", help="Run only these suites (repeatable)"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write the JSON summary here"),
):
    """
    Run the acceptance suites; exit 0 iff every suite passes.

    The JSON summary holds no timings, so identical configs give identical files.

    Examples:
        triplekit selftest
        triplekit selftest --seed 7 --out summary.json
        triplekit selftest --tol-abs 1e-15
    """
    names = tuple(suite) if suite else SUITE_NAMES
    unknown = [name for name in names if name not in SUITE_NAMES]
    if unknown:
        raise _input_error(f"unknown suite(s) {', '.join(unknown)}; expected {', '.join(SUITE_NAMES)}")
    try:
        config = load_run_config(seed=seed, tol_abs=tol_abs, tol_rel=tol_rel, samples=samples)
    except ValueError as exc:
        raise _input_error(str(exc)) from exc

    results, timings = run_selftest(config, names)
    summary = {
        "config": config.model_dump(),
        "passed": all(r.passed for r in results),
        "suites": [r.to_dict() for r in results],
    }
    print_selftest_summary(summary["suites"], timings)
    _write(summary, out)
    raise typer.Exit(EXIT_PASS if summary["passed"] else EXIT_FAIL)


def main():
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
