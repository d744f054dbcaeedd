"""
Real-linear maps between factors, stored as complex matrices on coordinates.

A conjugate-linear map conjugates the source coordinates before the matrix
acts. Maps on direct sums that mix both branches are kept as blocks.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ShapeError
from .factors import Element, FactorDescriptor, basis, from_coords, stack_coords, to_coords, zeros


class Branch(str, Enum):
    LINEAR = "linear"
    ANTILINEAR = "antilinear"
    MIXED = "mixed"


@dataclass(frozen=True, eq=False)
class RealLinearMap:
    """x -> M g(x) on coordinates, g the identity or complex conjugation."""

    source: FactorDescriptor
    target: FactorDescriptor
    matrix: np.ndarray
    branch: Branch = Branch.LINEAR

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        expected = (self.target.complex_dim, self.source.complex_dim)
        if matrix.shape != expected:
            raise ShapeError(f"map matrix must have shape {expected}, got {matrix.shape}")
        if self.branch == Branch.MIXED:
            raise ShapeError("a single matrix map is either linear or antilinear")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "branch", Branch(self.branch))

    @classmethod
    def from_function(
        cls,
        source: FactorDescriptor,
        target: FactorDescriptor,
        fn: Callable[[Element], Element],
        branch: Branch = Branch.LINEAR,
    ) -> RealLinearMap:
        """Matrix of ``fn`` from its values on the (real) basis of ``source``."""
        return cls(source, target, stack_coords(fn(e) for e in basis(source)), branch)

    @classmethod
    def identity(cls, factor: FactorDescriptor) -> RealLinearMap:
        return cls(factor, factor, np.eye(factor.complex_dim, dtype=complex))

    def apply(self, x: Element) -> Element:
        if x.factor != self.source:
            raise ShapeError(f"map expects {self.source}, got {x.factor}")
        coords = to_coords(x)
        if self.branch == Branch.ANTILINEAR:
            coords = np.conj(coords)
        return from_coords(self.target, self.matrix @ coords)

    __call__ = apply

    def scaled(self, scalar: complex) -> RealLinearMap:
        """x -> scalar * T(x)."""
        return RealLinearMap(self.source, self.target, complex(scalar) * self.matrix, self.branch)


@dataclass(frozen=True, eq=False)
class MapBlock:
    source_index: int
    target_index: int
    map: RealLinearMap


@dataclass(frozen=True, eq=False)
class AtomicMap:
    """Block map between direct sums: summand i goes to summand target_index."""

    source: FactorDescriptor
    target: FactorDescriptor
    blocks: tuple[MapBlock, ...]

    def __post_init__(self):
        if not (self.source.is_sum and self.target.is_sum):
            raise ShapeError("AtomicMap connects direct sums")
        seen = sorted(block.source_index for block in self.blocks)
        if seen != list(range(len(self.source.components))):
            raise ShapeError("every source summand needs exactly one block")

    @property
    def branch(self) -> Branch:
        branches = {block.map.branch for block in self.blocks}
        return branches.pop() if len(branches) == 1 else Branch.MIXED

    @property
    def permutation(self) -> tuple[int, ...]:
        ordered = sorted(self.blocks, key=lambda block: block.source_index)
        return tuple(block.target_index for block in ordered)

    def apply(self, x: Element) -> Element:
        if x.factor != self.source:
            raise ShapeError(f"map expects {self.source}, got {x.factor}")
        parts = list(zeros(self.target).components)
        for block in self.blocks:
            parts[block.target_index] = block.map.apply(x.component(block.source_index))
        return Element(self.target, tuple(parts))

    __call__ = apply


def block_map(
    source: FactorDescriptor, target: FactorDescriptor, blocks: Sequence[tuple[int, int, RealLinearMap]]
) -> AtomicMap:
    return AtomicMap(source, target, tuple(MapBlock(i, j, m) for i, j, m in blocks))
