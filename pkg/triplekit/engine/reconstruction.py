"""
Reconstruction of real-linear triple isomorphisms from tripotent oracles.

Spin factors are rebuilt from the images of a real orthonormal basis after
removing the phase of Φ(e_0); rectangular factors from the images of the
matrix-unit grid; finite direct sums by routing each summand to the single
target summand it lands in and reconstructing block by block.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ClassificationError, PreconditionError, RoutingError, StructureError
from .factors import Element, FactorDescriptor, FactorKind, basis, embed, from_coords, norm, to_coords
from .grids import AXIOM_LABELS, grid_linear_extension, rectangular_grid, verify_rectangular_grid
from .maps import AtomicMap, Branch, MapBlock, RealLinearMap
from .oracles import TripotentOracle
from .phases import detect_branch
from .spin_geometry import SpinKind, classify_spin_tripotent, spin_model
from .tolerance import DEFAULT_TOLERANCE, Tolerance
from .verification import ExtensionReport, classify_square_automorphism, verify_extension

logger = logging.getLogger(__name__)

DEFAULT_RECONSTRUCTION_SAMPLES = 300


@dataclass(frozen=True, eq=False)
class ReconstructionReport:
    """Recovered map with the evidence collected while building and checking it."""

    source: FactorDescriptor
    target: FactorDescriptor
    lambda0: complex
    branch: Branch
    map: RealLinearMap | AtomicMap
    extension: ExtensionReport
    routing: tuple[int, ...] | None = None
    blocks: tuple[ReconstructionReport, ...] = ()
    square_form: int | None = None
    checks: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return self.extension.max_residual

    @property
    def n_samples(self) -> int:
        return self.extension.n_samples

    @property
    def branches(self) -> tuple[Branch, ...]:
        if self.blocks:
            return tuple(block.branch for block in self.blocks)
        return (self.branch,)

    def to_dict(self) -> dict:
        payload = {
            "source": str(self.source),
            "target": str(self.target),
            "lambda0": [self.lambda0.real, self.lambda0.imag],
            "branch": self.branch.value,
            "branches": [b.value for b in self.branches],
            "max_residual": self.max_residual,
            "n_samples": self.n_samples,
            "extension": self.extension.to_dict(),
            "checks": dict(self.checks),
        }
        if self.routing is not None:
            payload["routing"] = list(self.routing)
        if self.square_form is not None:
            payload["square_form"] = self.square_form
        if self.blocks:
            payload["blocks"] = [block.to_dict() for block in self.blocks]
        return payload


def _spin_target(oracle: TripotentOracle) -> tuple[TripotentOracle, RealLinearMap | None]:
    """Oracle with a spin target, plus the map back to the original target if one was needed."""
    source, target = oracle.source, oracle.target
    if target == source:
        return oracle, None
    try:
        model = spin_model(source.dim, target)
    except PreconditionError as exc:
        raise StructureError(f"target {target} is not a spin factor of dimension {source.dim}") from exc
    inverse = np.linalg.inv(model.matrix)
    pulled = oracle.composed(lambda e: from_coords(source, inverse @ to_coords(e)), source)
    return pulled, model


def reconstruct_spin(
    oracle: TripotentOracle,
    tol: Tolerance = DEFAULT_TOLERANCE,
    n_samples: int = DEFAULT_RECONSTRUCTION_SAMPLES,
    seed: int | np.random.Generator = 0,
) -> ReconstructionReport:
    """Rebuild T = λ0 Ũ for Φ on spin(d).

    Steps: phase λ0 of the maximal tripotent Φ(e_0); Φ1 = conj(λ0) Φ; branch
    from the phase map of Φ1 at e_0; U(e_k) = Φ1(e_k) checked real and
    orthonormal. herm(2), rect(2,2) and skew(4) targets for spin(3), spin(4)
    and spin(6) are read through their spin models.

    Raises:
        StructureError: If a step of the construction fails, naming the step.
    """
    factor = oracle.source
    if factor.kind != FactorKind.SPIN:
        raise PreconditionError(f"reconstruct_spin needs a spin factor, got {factor}")
    working, model = _spin_target(oracle)
    frame = basis(factor)

    anchor = classify_spin_tripotent(working(frame[0]), tol)
    if anchor.kind != SpinKind.MAXIMAL:
        raise StructureError(f"Φ(e_0) is {anchor.kind.value}, expected a maximal tripotent")
    lambda0 = anchor.phase
    normalized = working.scaled(np.conj(lambda0))
    branch = detect_branch(normalized, frame[0], tol)

    columns = np.column_stack([normalized(e).data for e in frame])
    imaginary = float(np.max(np.abs(columns.imag)))
    if not tol.accepts(imaginary):
        raise StructureError(f"Φ1(e_k) is not real (imaginary part {imaginary:.3e}); real sphere not preserved")
    rotation = columns.real
    gram = float(np.max(np.abs(rotation.T @ rotation - np.eye(factor.dim))))
    if not tol.accepts(gram):
        raise StructureError(f"Gram matrix of Φ1(e_k) is not the identity (residual {gram:.3e})")

    # Φ1 on a minimal tripotent is the average of its maximal parts
    a, b = frame[0], frame[1]
    minimal = normalized(0.5 * (a + 1j * b)) - 0.5 * (normalized(a) + normalized(1j * b))
    minimal_residual = norm(minimal)
    if not tol.accepts(minimal_residual):
        raise StructureError(f"Φ1(1/2(a+ib)) differs from 1/2(Φ1(a)+Φ1(ib)) by {minimal_residual:.3e}")

    transform = RealLinearMap(factor, factor, lambda0 * rotation, branch)
    if model is not None:
        transform = RealLinearMap(factor, model.target, model.matrix @ transform.matrix, branch)
    extension = verify_extension(transform, oracle, n_samples, seed, tol)
    logger.info("spin(%d): λ0=%s branch=%s residual=%.3e", factor.dim, lambda0, branch.value, extension.max_residual)
    return ReconstructionReport(
        source=factor,
        target=oracle.target,
        lambda0=complex(lambda0),
        branch=branch,
        map=transform,
        extension=extension,
        checks={"imaginary": imaginary, "gram": gram, "minimal_formula": float(minimal_residual)},
    )


def reconstruct_rectangular(
    oracle: TripotentOracle,
    tol: Tolerance = DEFAULT_TOLERANCE,
    n_samples: int = DEFAULT_RECONSTRUCTION_SAMPLES,
    seed: int | np.random.Generator = 0,
) -> ReconstructionReport:
    """Extend Φ linearly (or conjugate-linearly) from the matrix-unit grid of rect(m, n).

    Raises:
        PreconditionError: If the factor is not rect with rank >= 2.
        StructureError: If the image cells break a grid axiom.
    """
    factor = oracle.source
    if factor.kind != FactorKind.RECT or min(factor.m, factor.n) < 2:
        raise PreconditionError(f"reconstruct_rectangular needs rect(m,n) with rank >= 2, got {factor}")
    grid = rectangular_grid(factor.m, factor.n)
    images = grid.map_cells(oracle)
    grid_report = verify_rectangular_grid(images, tol)
    if not grid_report.ok:
        first = grid_report.violations[0]
        label = AXIOM_LABELS.get(first.axiom, first.axiom)
        raise StructureError(f"grid axiom {label} violated at {first.indices} (residual {first.residual:.3e})")

    branch = detect_branch(oracle, grid.cell(0, 0), tol)
    transform = grid_linear_extension(grid, images, branch, tol)

    square_form = None
    if factor.m == factor.n and oracle.target == factor:
        try:
            square_form = classify_square_automorphism(transform, tol).form
        except ClassificationError as exc:
            logger.warning("square form not recognized: %s", exc)

    extension = verify_extension(transform, oracle, n_samples, seed, tol)
    logger.info("%s: branch=%s residual=%.3e", factor, branch.value, extension.max_residual)
    return ReconstructionReport(
        source=factor,
        target=oracle.target,
        lambda0=1.0 + 0j,
        branch=branch,
        map=transform,
        extension=extension,
        square_form=square_form,
    )


def route_components(oracle: TripotentOracle, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[int, ...]:
    """σ(i): the only target summand hit by Φ of a unit tripotent of summand i.

    Raises:
        RoutingError: If an image spreads over several summands or σ is not a bijection.
    """
    source, target = oracle.source, oracle.target
    routing = []
    for index, component in enumerate(source.components):
        image = oracle(embed(source, index, component.unit()))
        hit = [j for j, part in enumerate(image.components) if norm(part) > tol.bound()]
        if len(hit) != 1:
            raise RoutingError(f"summand {index} is sent into target summands {hit}; expected exactly one")
        routing.append(hit[0])
    if sorted(routing) != list(range(len(target.components))):
        raise RoutingError(f"routing {routing} is not a bijection onto {len(target.components)} summands")
    return tuple(routing)


def _block_oracle(oracle: TripotentOracle, index: int, target_index: int) -> TripotentOracle:
    source, target = oracle.source, oracle.target
    return TripotentOracle(
        source.components[index],
        target.components[target_index],
        lambda x: oracle(embed(source, index, x)).component(target_index),
        oracle.provenance,
        tol=oracle.tol,
    )


def reconstruct_atomic(
    oracle: TripotentOracle,
    tol: Tolerance = DEFAULT_TOLERANCE,
    n_samples: int = DEFAULT_RECONSTRUCTION_SAMPLES,
    seed: int | np.random.Generator = 0,
) -> ReconstructionReport:
    """Route summands, reconstruct each block and assemble the block map."""
    source, target = oracle.source, oracle.target
    if not (source.is_sum and target.is_sum):
        raise PreconditionError("reconstruct_atomic needs direct sums on both sides")
    if not source.supports_reconstruction:
        raise PreconditionError(f"{source} has a summand without a reconstruction route")

    routing = route_components(oracle, tol)
    block_reports = []
    for index, target_index in enumerate(routing):
        block = _block_oracle(oracle, index, target_index)
        block_reports.append(reconstruct(block, tol, n_samples, seed))

    transform = AtomicMap(
        source,
        target,
        tuple(MapBlock(i, j, report.map) for i, (j, report) in enumerate(zip(routing, block_reports))),
    )
    extension = verify_extension(transform, oracle, n_samples, seed, tol)
    logger.info("atomic routing %s branches %s", routing, [r.branch.value for r in block_reports])
    return ReconstructionReport(
        source=source,
        target=target,
        lambda0=1.0 + 0j,
        branch=transform.branch,
        map=transform,
        extension=extension,
        routing=routing,
        blocks=tuple(block_reports),
    )


def reconstruct(
    oracle: TripotentOracle,
    tol: Tolerance = DEFAULT_TOLERANCE,
    n_samples: int = DEFAULT_RECONSTRUCTION_SAMPLES,
    seed: int | np.random.Generator = 0,
) -> ReconstructionReport:
    """Dispatch on the source factor kind."""
    kind = oracle.source.kind
    if kind == FactorKind.SPIN:
        return reconstruct_spin(oracle, tol, n_samples, seed)
    if kind == FactorKind.RECT:
        return reconstruct_rectangular(oracle, tol, n_samples, seed)
    if kind == FactorKind.SUM:
        return reconstruct_atomic(oracle, tol, n_samples, seed)
    raise PreconditionError(f"no reconstruction route for {oracle.source}")


def _factor_queries(factor: FactorDescriptor) -> list[Element]:
    if factor.kind == FactorKind.SPIN:
        e = basis(factor)
        return [*e[: factor.dim], 1j * e[0], 1j * e[1], 0.5 * (e[0] + 1j * e[1])]
    if factor.kind == FactorKind.RECT:
        cells = [cell for _, cell in rectangular_grid(factor.m, factor.n).items()]
        return [*cells, 1j * cells[0]]
    queries = []
    for index, component in enumerate(factor.components):
        queries.append(embed(factor, index, component.unit()))
        queries.extend(embed(factor, index, x) for x in _factor_queries(component))
    return queries


def reconstruction_queries(factor: FactorDescriptor) -> list[Element]:
    """Every tripotent ``reconstruct`` evaluates the oracle on when no random samples are drawn.

    spin(d): e_0..e_{d-1}, i e_0, i e_1 and 1/2(e_0 + i e_1). rect(m,n): the
    matrix units and i E_00. Direct sums: the unit of each summand and the
    queries of each summand, embedded.

    Raises:
        PreconditionError: If the factor has no reconstruction route.
    """
    if not factor.supports_reconstruction:
        raise PreconditionError(f"no reconstruction route for {factor}")
    unique: list[Element] = []
    for query in _factor_queries(factor):
        if all(norm(query - seen) > 0.0 for seen in unique):
            unique.append(query)
    return unique


def oracle_table(oracle: TripotentOracle) -> list[tuple[Element, Element]]:
    """The finite table of Φ on ``reconstruction_queries``; enough for a table-backed ``reconstruct``."""
    return [(x, oracle(x)) for x in reconstruction_queries(oracle.source)]
