"""
CLI runners for the self-test and the Lorentz demo.

Contains run_* functions that wrap engine logic with CLI presentation
(progress indicators and timings).
"""

import time

import numpy as np
from rich.progress import Progress, SpinnerColumn, TextColumn

from triplekit.cli.constants import SUITE_NAMES
from triplekit.cli.presenters import console
from triplekit.cli.suites import SUITES, SuiteResult
from triplekit.engine import (
    is_tripotent,
    lorentz_boost,
    matrix_rep,
    polar_tripotent_part,
    spin_determinant,
    spin_state,
)
from triplekit.engine.sampling import spawn_generators
from triplekit.settings import RunConfig


def run_selftest(config: RunConfig, suites: tuple[str, ...] = SUITE_NAMES) -> tuple[list[SuiteResult], dict[str, float]]:
    """
    Run acceptance suites with a progress spinner.

    Every suite gets its own generator spawned from the config seed, so a
    suite's outcome does not depend on which other suites ran.

    Args:
        config: Run configuration
        suites: Names of the suites to run, in order

    Returns:
        Tuple of (results, timings in seconds per suite)
    """
    generators = spawn_generators(config.seed, SUITE_NAMES)
    results: list[SuiteResult] = []
    timings: dict[str, float] = {}

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
        transient=True,
    ) as progress:
        for name in suites:
            task = progress.add_task(f"Running {name}...", total=None)
            start = time.perf_counter()
            result = SUITES[name](config, generators[name])
            timings[name] = time.perf_counter() - start
            progress.remove_task(task)
            mark = "[green]✓[/green]" if result.passed else "[red]✗[/red]"
            console.print(f"{mark} {name} complete")
            results.append(result)

    return results, timings


def run_lorentz_demo(rapidity: float, axis: int, direction: tuple[float, float, float]) -> dict:
    """
    Boost the spin state for ``direction`` and collect what the demo shows.

    Returns:
        Dict with the state and boosted matrices, determinants, tripotent
        flags and the polar part of the boosted state
    """
    state = spin_state(direction)
    boosted = lorentz_boost(state, rapidity, axis)
    polar = polar_tripotent_part(boosted)
    return {
        "rapidity": rapidity,
        "axis": axis,
        "direction": [float(b) for b in direction],
        "state": matrix_rep(state),
        "boosted": matrix_rep(boosted),
        "polar": matrix_rep(polar),
        "det_before": spin_determinant(state),
        "det_after": spin_determinant(boosted),
        "tripotent_before": is_tripotent(state),
        "tripotent_after": is_tripotent(boosted),
        "polar_is_tripotent": is_tripotent(polar),
        "polar_distance": float(np.max(np.abs(matrix_rep(polar) - matrix_rep(state)))),
    }
