"""
Acceptance suites run by ``triplekit selftest``.

Each suite takes the run config and its own generator and returns a
SuiteResult. Residuals are relative unless a suite says otherwise; a
suite passes when its worst residual stays under the bound derived from
the config (tol_abs, or the reconstruction threshold) and all its boolean
checks hold.
"""

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from triplekit.engine import (
    Branch,
    Element,
    OracleRecipe,
    TripotentOracle,
    check_preservation,
    direct_sum,
    herm,
    is_quadrangle,
    is_trangle,
    is_tripotent,
    lorentz_boost,
    make_oracle,
    matrix_rep,
    norm,
    oracle_table,
    peirce,
    phase_map_report,
    polar_tripotent_part,
    random_element,
    reconstruct,
    rect,
    skew,
    spin,
    spin_determinant,
    spin_model,
    spin_state,
    triple_product,
    verify_rectangular_grid,
)
from triplekit.engine.grids import grid_closure, rectangular_grid
from triplekit.engine.sampling import random_phase, random_tripotent
from triplekit.engine.verification import SQUARE_FORMS
from triplekit.settings import RunConfig


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    max_residual: float = 0.0
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def residual(self, value: float, bound: float, label: str) -> None:
        self.checks += 1
        self.max_residual = max(self.max_residual, float(value))
        if not value <= bound:
            self.fail(f"{label}: residual {value:.3e} exceeds {bound:.1e}")

    def expect(self, condition: bool, label: str) -> None:
        self.checks += 1
        if not condition:
            self.fail(label)

    def fail(self, message: str) -> None:
        self.passed = False
        # keep reports readable when a whole suite drifts
        if len(self.failures) < 20:
            self.failures.append(message)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "checks": self.checks,
            "failures": list(self.failures),
        }


def _unit(m: int, n: int, i: int, j: int) -> Element:
    data = np.zeros((m, n), dtype=complex)
    data[i, j] = 1.0
    return Element(rect(m, n), data)


# =============================================================================
# Algebra suites
# =============================================================================

NORM_AXIOM_FACTORS = (rect(2, 3), skew(4), herm(3), spin(3), spin(4), spin(5), spin(6))


def suite_norm_axiom(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """‖{a,a,a}‖ = ‖a‖³ on random elements of every factor kind."""
    result = SuiteResult("norm_axiom")
    count = config.sample_count("norm_axiom")
    for factor in NORM_AXIOM_FACTORS:
        worst = 0.0
        for _ in range(count):
            a = random_element(factor, rng)
            cube = norm(a) ** 3
            worst = max(worst, abs(norm(triple_product(a, a, a)) - cube) / cube)
        result.residual(worst, config.tol_abs, str(factor))
    return result


PEIRCE_FACTORS = (rect(2, 3), rect(3, 3), skew(4), herm(3), spin(4))


def suite_peirce(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Peirce closure, agreement of both projection paths, and {E_2, E_0, E} = 0."""
    result = SuiteResult("peirce")
    tol = config.tolerance()
    count = config.sample_count("peirce")
    for factor in PEIRCE_FACTORS:
        closure = agreement = arithmetic = 0.0
        for _ in range(count):
            e = random_tripotent(factor, rng)
            data = peirce(e, tol)
            x, y, z = (random_element(factor, rng) for _ in range(3))
            parts = data.decompose(x)
            closure = max(closure, norm(parts[0] + parts[1] + parts[2] - x) / norm(x))
            agreement = max(agreement, data.closed_form_residual(x) / norm(x))
            product = triple_product(data.project(2, y), data.project(0, z), x)
            arithmetic = max(arithmetic, norm(product) / (norm(x) * norm(y) * norm(z)))
        result.residual(closure, config.tol_abs / 10.0, f"{factor} closure")
        result.residual(agreement, config.tol_abs, f"{factor} closed forms")
        result.residual(arithmetic, config.tol_abs, f"{factor} Peirce arithmetic")
    return result


# P_{j±} as displayed for the Stern-Gerlach states; the y pair follows the
# displayed matrices, which are the projections for -e_2 and +e_2 respectively
DISPLAYED_PROJECTIONS = (
    np.array([[1, 0], [0, 0]], dtype=complex),
    np.array([[0, 0], [0, 1]], dtype=complex),
    0.5 * np.array([[1, 1], [1, 1]], dtype=complex),
    0.5 * np.array([[1, -1], [-1, 1]], dtype=complex),
    0.5 * np.array([[1, 1j], [-1j, 1]], dtype=complex),
    0.5 * np.array([[1, -1j], [1j, 1]], dtype=complex),
)

AXIS_DIRECTIONS = (
    (0.0, 0.0, 1.0),
    (0.0, 0.0, -1.0),
    (1.0, 0.0, 0.0),
    (-1.0, 0.0, 0.0),
    (0.0, -1.0, 0.0),
    (0.0, 1.0, 0.0),
)


def suite_spin_model(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Norm and determinant transport through the 2x2 model; displayed spin projections."""
    result = SuiteResult("spin_model")
    factor = spin(4)
    norm_drift = det_drift = 0.0
    for _ in range(config.sample_count("spin_model")):
        x = random_element(factor, rng)
        matrix = matrix_rep(x)
        norm_drift = max(norm_drift, abs(norm(x) - np.linalg.norm(matrix, 2)) / norm(x))
        det_drift = max(det_drift, abs(spin_determinant(x) - np.linalg.det(matrix)) / max(1.0, norm(x) ** 2))
    result.residual(norm_drift, config.tol_abs, "norm vs operator norm")
    result.residual(det_drift, config.tol_abs, "determinant")

    worst = 0.0
    for direction, expected in zip(AXIS_DIRECTIONS, DISPLAYED_PROJECTIONS):
        worst = max(worst, float(np.max(np.abs(matrix_rep(spin_state(direction)) - expected))))
    result.residual(worst, config.tol_abs * 1e-3, "displayed spin projections")
    return result


def suite_lorentz(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Boosts keep the determinant to tol_abs in absolute terms; boosted tripotents need their polar part."""
    result = SuiteResult("lorentz")
    tol = config.tolerance()
    factor = spin(4)
    drift = 0.0
    for _ in range(config.sample_count("lorentz")):
        x = random_element(factor, rng)
        rapidity = rng.uniform(-3.0, 3.0)
        axis = int(rng.integers(1, 4))
        boosted = lorentz_boost(x, rapidity, axis)
        drift = max(drift, abs(spin_determinant(boosted) - spin_determinant(x)))
    result.residual(drift, config.tol_abs, "determinant under boosts")

    for label, state in (("identity", Element(factor, [1, 0, 0, 0])), ("P_z+", spin_state((0, 0, 1)))):
        boosted = lorentz_boost(state, 0.5, 3)
        result.expect(not is_tripotent(boosted, tol), f"boosted {label} should not be a tripotent")
        result.expect(is_tripotent(polar_tripotent_part(boosted, tol), tol), f"polar part of boosted {label}")
    return result


# =============================================================================
# Reconstruction suites
# =============================================================================

RECONSTRUCTION_FACTORS = (
    spin(3),
    spin(4),
    spin(5),
    spin(6),
    rect(2, 2),
    rect(2, 3),
    rect(3, 3),
    rect(3, 4),
)


def random_recipe(factor, rng: np.random.Generator) -> OracleRecipe:
    """A random spin or rect recipe, antilinear half the time, transposed half the time when square."""
    phase = random_phase(rng)
    transpose = factor.kind.value == "rect" and factor.m == factor.n and bool(rng.random() < 0.5)
    return OracleRecipe(
        kind=factor.kind.value,
        phase=(phase.real, phase.imag),
        seed=int(rng.integers(0, 2**31 - 1)),
        conjugate=bool(rng.random() < 0.5),
        transpose=transpose,
    )


def suite_reconstruction(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Round trips over spin(3..6) and rect factors, spin models in herm(2) and skew(4), and table-backed oracles."""
    result = SuiteResult("reconstruction")
    tol = config.tolerance()
    samples = config.sample_count("reconstruction_samples")
    for case in range(config.sample_count("reconstruction_cases")):
        factor = RECONSTRUCTION_FACTORS[case % len(RECONSTRUCTION_FACTORS)]
        recipe = random_recipe(factor, rng)
        oracle = make_oracle(factor, recipe, tol=tol)
        try:
            report = reconstruct(oracle, tol, samples, rng)
        except ValueError as exc:
            result.fail(f"case {case} {factor}: {exc}")
            continue
        result.expect(report.branch == recipe.branch, f"case {case} {factor}: branch {report.branch.value}")
        result.residual(report.max_residual, config.threshold, f"case {case} {factor}")
        if factor.kind.value == "rect" and factor.m == factor.n:
            expected = SQUARE_FORMS[(recipe.transpose, recipe.conjugate)]
            result.expect(report.square_form == expected, f"case {case} {factor}: form {report.square_form} != {expected}")

    for dim, target in ((3, herm(2)), (6, skew(4))):
        source = spin(dim)
        inner_oracle = make_oracle(source, random_recipe(source, rng), tol=tol)
        oracle = inner_oracle.composed(spin_model(dim, target).apply, target)
        try:
            report = reconstruct(oracle, tol, samples, rng)
        except ValueError as exc:
            result.fail(f"{source} -> {target}: {exc}")
            continue
        result.residual(report.max_residual, config.threshold, f"{source} -> {target}")

    for factor in (spin(5), rect(2, 3)):
        recipe = random_recipe(factor, rng)
        table = TripotentOracle.from_table(oracle_table(make_oracle(factor, recipe, tol=tol)), tol)
        try:
            report = reconstruct(table, tol, 0, rng)
        except ValueError as exc:
            result.fail(f"{factor} table: {exc}")
            continue
        result.expect(report.branch == recipe.branch, f"{factor} table: branch {report.branch.value}")
        result.residual(report.max_residual, config.threshold, f"{factor} table")
    return result


ATOMIC_FACTOR = direct_sum(spin(3), rect(2, 2), spin(4))
ATOMIC_RECIPE = OracleRecipe(
    kind="sum",
    seed=17,
    permutation=[2, 1, 0],
    components=[
        OracleRecipe(kind="spin", phase=(0.0, 1.0)),
        OracleRecipe(kind="rect", conjugate=True),
        OracleRecipe(kind="spin", phase=(np.cos(0.3), np.sin(0.3))),
    ],
)


def suite_atomic(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Routing and per-block reconstruction on a permuted, branch-mixed sum."""
    result = SuiteResult("atomic")
    tol = config.tolerance()
    oracle = make_oracle(ATOMIC_FACTOR, ATOMIC_RECIPE, tol=tol)
    try:
        report = reconstruct(oracle, tol, config.sample_count("atomic_samples"), rng)
    except ValueError as exc:
        result.fail(str(exc))
        return result
    result.expect(report.routing == (2, 1, 0), f"routing {report.routing}")
    expected = (Branch.LINEAR, Branch.ANTILINEAR, Branch.LINEAR)
    result.expect(report.branches == expected, f"branches {[b.value for b in report.branches]}")
    for index, block in enumerate(report.blocks):
        result.residual(block.max_residual, config.threshold, f"block {index}")
    result.residual(report.max_residual, config.threshold, "assembled map")
    return result


def violating_tables() -> dict[str, list[tuple[Element, Element]]]:
    """Small tables that each break one preservation property, keyed by the violation kind."""
    zero = Element(rect(2, 2), np.zeros((2, 2)))
    e11, e22, e12 = _unit(2, 2, 0, 0), _unit(2, 2, 1, 1), _unit(2, 2, 0, 1)
    identity = e11 + e22
    # E11 + E22 in rect(3,3) sent to the identity: order survives, the join does not
    zero3 = Element(rect(3, 3), np.zeros((3, 3)))
    f11, f22, f33 = _unit(3, 3, 0, 0), _unit(3, 3, 1, 1), _unit(3, 3, 2, 2)
    return {
        "order": [(zero, zero), (e11, identity), (e22, e22), (identity, e11)],
        "orthogonality": [(zero, zero), (e11, e11), (e22, e12)],
        "additivity": [(zero, zero), (e11, e11), (e22, -e22), (identity, identity)],
        "supremum": [(zero3, zero3), (f11, f11), (f22, f22), (f11 + f22, f11 + f22 + f33)],
    }


def suite_preservation(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Order, orthogonality, additivity and lattice bounds on grid closures; the violating tables are rejected."""
    result = SuiteResult("preservation")
    tol = config.tolerance()
    for m, n in ((2, 2), (3, 3)):
        factor = rect(m, n)
        family = [member.element for member in grid_closure(rectangular_grid(m, n))]
        oracle = make_oracle(factor, random_recipe(factor, rng), tol=tol)
        report = check_preservation(family, oracle, tol)
        result.expect(report.ok, f"{factor} closure: {sorted(report.kinds())}")
        result.expect(
            report.orthogonality_confirmed == report.orthogonal_pairs,
            f"{factor} closure: orthogonality confirmed on {report.orthogonality_confirmed}/{report.orthogonal_pairs}",
        )
        result.expect(report.additivity_checked > 0, f"{factor} closure: no additivity checks")
        result.expect(report.lattice_checked > 0, f"{factor} closure: no supremum or infimum checks")

    for kind, table in violating_tables().items():
        oracle = TripotentOracle.from_table(table, tol)
        report = check_preservation([x for x, _ in table], oracle, tol)
        result.expect(kind in report.kinds(), f"table '{kind}' not rejected as {kind}")
    return result


def suite_phase_laws(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Multiplicativity, conjugation symmetry, f(-1) = -1, and agreement across tripotents."""
    result = SuiteResult("phase_laws")
    tol = config.tolerance()
    cases = (
        (spin(4), OracleRecipe(kind="identity"), 1j),
        (rect(2, 2), OracleRecipe(kind="rect", conjugate=True, seed=3), -1j),
        (spin(5), OracleRecipe(kind="spin", phase=(np.cos(np.pi / 5), np.sin(np.pi / 5)), seed=11), 1j),
        (rect(3, 3), OracleRecipe(kind="rect", transpose=True, seed=5), 1j),
    )
    for factor, recipe, expected in cases:
        oracle = make_oracle(factor, recipe, tol=tol)
        u = random_tripotent(factor, rng)
        report = phase_map_report(oracle, u, config.sample_count("phase_pairs"), rng, tol=tol)
        result.residual(report.max_residual, config.tol_abs, f"{factor} phase laws")
        result.expect(abs(report.f_i - expected) <= config.tol_abs, f"{factor}: f(i) = {report.f_i}")
    return result


def suite_grids(config: RunConfig, rng: np.random.Generator) -> SuiteResult:
    """Grid axioms on rect(3,4) and its oracle images; quadrangle and trangle transport."""
    result = SuiteResult("grids")
    tol = config.tolerance()
    grid = rectangular_grid(3, 4)
    result.expect(verify_rectangular_grid(grid, tol).ok, "rectangular_grid(3,4)")
    for conjugate in (False, True):
        recipe = OracleRecipe(kind="rect", seed=int(rng.integers(0, 2**31 - 1)), conjugate=conjugate)
        oracle = make_oracle(rect(3, 4), recipe, tol=tol)
        report = verify_rectangular_grid(grid.map_cells(oracle), tol)
        result.expect(report.ok, f"image grid (conjugate={conjugate}): {len(report.violations)} violations")

    e11, e12, e21, e22 = _unit(2, 2, 0, 0), _unit(2, 2, 0, 1), _unit(2, 2, 1, 0), _unit(2, 2, 1, 1)
    for transpose in (False, True):
        recipe = OracleRecipe(kind="rect", seed=int(rng.integers(0, 2**31 - 1)), transpose=transpose)
        phi = make_oracle(rect(2, 2), recipe, tol=tol)
        result.expect(
            is_quadrangle(phi(e11), phi(e12), phi(e22), phi(e21), tol),
            f"quadrangle image (transpose={transpose})",
        )
        result.expect(is_trangle(phi(e11), phi(e12 + e21), phi(e22), tol), f"trangle image (transpose={transpose})")
    return result


SUITES: dict[str, Callable[[RunConfig, np.random.Generator], SuiteResult]] = {
    "norm_axiom": suite_norm_axiom,
    "peirce": suite_peirce,
    "spin_model": suite_spin_model,
    "lorentz": suite_lorentz,
    "reconstruction": suite_reconstruction,
    "atomic": suite_atomic,
    "preservation": suite_preservation,
    "phase_laws": suite_phase_laws,
    "grids": suite_grids,
}
