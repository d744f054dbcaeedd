"""
Tripotent oracles: the bijection Φ as a callable on elements.

Oracles come from a ground-truth map (usually built from an OracleRecipe),
from a finite lookup table, or from an arbitrary external function. Every
call checks that the output is a tripotent.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.stats import special_ortho_group

from .errors import NotATripotentError, OracleLookupError, PreconditionError, ShapeError
from .factors import Element, FactorDescriptor, FactorKind, direct_sum, norm, triple_product
from .maps import AtomicMap, Branch, MapBlock, RealLinearMap
from .sampling import make_rng, random_unitary
from .tolerance import DEFAULT_TOLERANCE, Tolerance
from .tripotents import is_tripotent

logger = logging.getLogger(__name__)


class ProvenanceKind(str, Enum):
    GENERATED = "generated"
    TABLE = "table"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Provenance:
    kind: ProvenanceKind
    description: str = ""


class OracleRecipe(BaseModel):
    """How to generate a ground-truth triple isomorphism.

    ``phase`` is λ0 as [re, im] (rescaled to modulus one). ``seed`` draws the
    rotation (spin) or the unitary pair (rect); without it the frame is the
    identity. ``permutation`` and ``components`` describe direct sums.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    kind: Literal["identity", "spin", "rect", "sum"] = "identity"
    phase: tuple[float, float] = Field(default=(1.0, 0.0), alias="lambda0")
    seed: int | None = None
    conjugate: bool = False
    transpose: bool = False
    permutation: list[int] | None = None
    components: list[OracleRecipe] = Field(default_factory=list)

    @field_validator("phase")
    @classmethod
    def _unimodular(cls, value: tuple[float, float]) -> tuple[float, float]:
        modulus = float(np.hypot(*value))
        if modulus == 0.0:
            raise ValueError("phase must be nonzero")
        return (value[0] / modulus, value[1] / modulus)

    @property
    def lambda0(self) -> complex:
        return complex(*self.phase)

    @property
    def branch(self) -> Branch:
        return Branch.ANTILINEAR if self.conjugate else Branch.LINEAR


OracleRecipe.model_rebuild()


class TripotentOracle:
    """Φ: tripotents of ``source`` -> tripotents of ``target``."""

    def __init__(
        self,
        source: FactorDescriptor,
        target: FactorDescriptor,
        fn: Callable[[Element], Element],
        provenance: Provenance | None = None,
        ground_truth: RealLinearMap | AtomicMap | None = None,
        tol: Tolerance = DEFAULT_TOLERANCE,
        check_outputs: bool = True,
    ):
        self.source = source
        self.target = target
        self.provenance = provenance or Provenance(ProvenanceKind.EXTERNAL)
        self.ground_truth = ground_truth
        self.tol = tol
        self._fn = fn
        self._check_outputs = check_outputs

    def __repr__(self) -> str:
        return f"TripotentOracle({self.source} -> {self.target}, {self.provenance.kind.value})"

    def __call__(self, e: Element) -> Element:
        if e.factor != self.source:
            raise ShapeError(f"oracle expects {self.source}, got {e.factor}")
        image = self._fn(e)
        if image.factor != self.target:
            raise ShapeError(f"oracle produced {image.factor}, expected {self.target}")
        if self._check_outputs and not is_tripotent(image, self.tol):
            raise NotATripotentError("oracle output is not a tripotent")
        return image

    def scaled(self, scalar: complex) -> TripotentOracle:
        """x -> scalar * Φ(x)."""
        return TripotentOracle(
            self.source,
            self.target,
            lambda e: scalar * self(e),
            self.provenance,
            tol=self.tol,
            check_outputs=False,
        )

    def composed(self, fn: Callable[[Element], Element], target: FactorDescriptor) -> TripotentOracle:
        """x -> fn(Φ(x)), for a triple isomorphism ``fn`` onto ``target``."""
        return TripotentOracle(
            self.source,
            target,
            lambda e: fn(self(e)),
            self.provenance,
            tol=self.tol,
            check_outputs=False,
        )

    @classmethod
    def from_map(
        cls, ground_truth: RealLinearMap | AtomicMap, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> TripotentOracle:
        return cls(
            ground_truth.source,
            ground_truth.target,
            ground_truth.apply,
            Provenance(ProvenanceKind.GENERATED, f"{ground_truth.branch.value} ground truth"),
            ground_truth=ground_truth,
            tol=tol,
        )

    @classmethod
    def from_table(
        cls, pairs: Sequence[tuple[Element, Element]], tol: Tolerance = DEFAULT_TOLERANCE
    ) -> TripotentOracle:
        """Finite oracle; lookups match the nearest listed input within tolerance.

        Raises:
            PreconditionError: If the table is empty, mixes factors, or is not a bijection.
            NotATripotentError: If a listed value is not a tripotent.
        """
        if not pairs:
            raise PreconditionError("oracle table is empty")
        inputs = [p[0] for p in pairs]
        outputs = [p[1] for p in pairs]
        source, target = inputs[0].factor, outputs[0].factor
        if any(x.factor != source for x in inputs) or any(y.factor != target for y in outputs):
            raise PreconditionError("oracle table mixes factors")
        for index, (x, y) in enumerate(pairs):
            if not (is_tripotent(x, tol) and is_tripotent(y, tol)):
                raise NotATripotentError(f"table entry {index} is not a pair of tripotents")
        for label, values in (("inputs", inputs), ("outputs", outputs)):
            for i in range(len(values)):
                for j in range(i + 1, len(values)):
                    if norm(values[i] - values[j]) <= tol.bound(1.0):
                        raise PreconditionError(f"table {label} {i} and {j} coincide; not a bijection")

        def lookup(e: Element) -> Element:
            distances = [norm(e - x) for x in inputs]
            best = int(np.argmin(distances))
            if distances[best] > tol.bound(norm(e)):
                raise OracleLookupError(f"no table entry within tolerance (nearest {distances[best]:.3e})")
            return outputs[best]

        return cls(
            source,
            target,
            lookup,
            Provenance(ProvenanceKind.TABLE, f"{len(pairs)} entries"),
            tol=tol,
        )


# =============================================================================
# Recipes
# =============================================================================


def _spin_map(factor: FactorDescriptor, recipe: OracleRecipe, seed: int | None) -> RealLinearMap:
    if recipe.transpose:
        raise PreconditionError("transpose recipes apply to square rect factors")
    if seed is None:
        rotation = np.eye(factor.dim)
    else:
        rotation = special_ortho_group.rvs(factor.dim, random_state=make_rng(seed))
    return RealLinearMap(factor, factor, recipe.lambda0 * rotation, recipe.branch)


def _rect_map(factor: FactorDescriptor, recipe: OracleRecipe, seed: int | None) -> RealLinearMap:
    if recipe.transpose and factor.m != factor.n:
        raise PreconditionError(f"transpose recipe needs a square factor, got {factor}")
    if seed is None:
        left, right = np.eye(factor.m), np.eye(factor.n)
    else:
        rng = make_rng(seed)
        left, right = random_unitary(factor.m, rng), random_unitary(factor.n, rng)
    scale = recipe.lambda0

    def apply(e: Element) -> Element:
        x = e.data.T if recipe.transpose else e.data
        return Element(factor, scale * left @ x @ right)

    # basis elements are real, so conjugation only enters through the branch flag
    return RealLinearMap.from_function(factor, factor, apply, recipe.branch)


def recipe_map(
    factor: FactorDescriptor, recipe: OracleRecipe, seed: int | None = None
) -> RealLinearMap | AtomicMap:
    """Build the ground-truth map a recipe describes on ``factor``.

    Raises:
        ShapeError: If the recipe kind does not fit the factor.
    """
    seed = recipe.seed if recipe.seed is not None else seed
    if recipe.kind == "identity":
        if factor.is_sum:
            ident = [OracleRecipe(kind="identity", conjugate=recipe.conjugate)] * len(factor.components)
            return recipe_map(factor, OracleRecipe(kind="sum", components=ident), seed)
        if factor.kind == FactorKind.SPIN:
            return _spin_map(factor, recipe.model_copy(update={"seed": None}), None)
        if factor.kind == FactorKind.RECT:
            return _rect_map(factor, recipe.model_copy(update={"seed": None}), None)
        matrix = recipe.lambda0 * np.eye(factor.complex_dim)
        return RealLinearMap(factor, factor, matrix, recipe.branch)

    if recipe.kind == "spin":
        if factor.kind != FactorKind.SPIN:
            raise ShapeError(f"spin recipe does not fit {factor}")
        return _spin_map(factor, recipe, seed)
    if recipe.kind == "rect":
        if factor.kind != FactorKind.RECT:
            raise ShapeError(f"rect recipe does not fit {factor}")
        return _rect_map(factor, recipe, seed)

    if not factor.is_sum:
        raise ShapeError(f"sum recipe does not fit {factor}")
    count = len(factor.components)
    if len(recipe.components) != count:
        raise ShapeError(f"sum recipe lists {len(recipe.components)} components, {factor} has {count}")
    permutation = list(recipe.permutation) if recipe.permutation is not None else list(range(count))
    if sorted(permutation) != list(range(count)):
        raise ShapeError(f"permutation {permutation} is not a bijection of {count} summands")

    target_parts: list[FactorDescriptor | None] = [None] * count
    blocks = []
    for index, (component, sub_recipe) in enumerate(zip(factor.components, recipe.components)):
        sub_seed = None if seed is None else seed + index
        block = recipe_map(component, sub_recipe, sub_seed)
        target_parts[permutation[index]] = component
        blocks.append(MapBlock(index, permutation[index], block))
    return AtomicMap(factor, direct_sum(*target_parts), tuple(blocks))


def make_oracle(
    factor: FactorDescriptor,
    ground_truth: RealLinearMap | AtomicMap | OracleRecipe,
    seed: int | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> TripotentOracle:
    """Oracle applying a ground-truth triple isomorphism, given directly or as a recipe."""
    if isinstance(ground_truth, OracleRecipe):
        ground_truth = recipe_map(factor, ground_truth, seed)
    if ground_truth.source != factor:
        raise ShapeError(f"ground truth acts on {ground_truth.source}, not {factor}")
    logger.debug("oracle on %s from %s ground truth", factor, ground_truth.branch.value)
    return TripotentOracle.from_map(ground_truth, tol)


def preserves_triple_product(
    fn: Callable[[Element], Element], x: Element, y: Element, z: Element
) -> float:
    """‖fn{x,y,z} - {fn x, fn y, fn z}‖."""
    return norm(fn(triple_product(x, y, z)) - triple_product(fn(x), fn(y), fn(z)))
