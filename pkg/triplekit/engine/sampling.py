"""
Seeded random tripotents for every factor kind.

All samplers take a ``numpy.random.Generator``; suites derive independent
generators from one seed with ``SeedSequence.spawn``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import scipy.linalg
from scipy.stats import ortho_group, unitary_group

from .factors import Element, FactorDescriptor, FactorKind, crandn, zeros


def make_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_generators(seed: int, names: Sequence[str]) -> dict[str, np.random.Generator]:
    """One independent generator per name, stable for a given seed and name order."""
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {name: np.random.default_rng(child) for name, child in zip(names, children)}


def random_phase(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary."""
    if n == 1:
        return np.array([[random_phase(rng)]])
    return unitary_group.rvs(n, random_state=rng)


def random_orthonormal_frame(d: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """k orthonormal real vectors in R^d, as columns."""
    return ortho_group.rvs(d, random_state=rng)[:, :k]


def random_partial_isometry(m: int, n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    left, _, right_h = scipy.linalg.svd(crandn((m, n), rng))
    return left[:, :rank] @ right_h[:rank, :]


def _random_rank(factor: FactorDescriptor, rng: np.random.Generator) -> int:
    return int(rng.integers(1, factor.rank + 1))


def random_tripotent(
    factor: FactorDescriptor, rng: np.random.Generator, rank: int | None = None
) -> Element:
    """A random nonzero tripotent; ``rank`` fixes the rank for non-sum factors."""
    if factor.is_sum:
        return Element(factor, tuple(random_tripotent(c, rng) for c in factor.components))
    if rank is None:
        rank = _random_rank(factor, rng)
    if rank == 0:
        return zeros(factor)

    if factor.kind == FactorKind.RECT:
        return Element(factor, random_partial_isometry(factor.m, factor.n, rank, rng))
    if factor.kind == FactorKind.HERM:
        u = random_unitary(factor.n, rng)[:, :rank]
        return Element(factor, u @ u.T)
    if factor.kind == FactorKind.SKEW:
        u = random_unitary(factor.n, rng)[:, : 2 * rank]
        blocks = np.kron(np.eye(rank), np.array([[0.0, 1.0], [-1.0, 0.0]]))
        return Element(factor, u @ blocks @ u.T)

    # spin: rank 1 is minimal λ/2 (a + ib), rank 2 is maximal λa
    frame = random_orthonormal_frame(factor.dim, 2, rng)
    phase = random_phase(rng)
    if rank == 1:
        return Element(factor, 0.5 * phase * (frame[:, 0] + 1j * frame[:, 1]))
    return Element(factor, phase * frame[:, 0])


def random_minimal_tripotent(factor: FactorDescriptor, rng: np.random.Generator) -> Element:
    return random_tripotent(factor, rng, rank=1)


def random_complete_tripotent(factor: FactorDescriptor, rng: np.random.Generator) -> Element:
    if factor.is_sum:
        return Element(factor, tuple(random_complete_tripotent(c, rng) for c in factor.components))
    return random_tripotent(factor, rng, rank=factor.rank)


def random_spin_tripotent(factor: FactorDescriptor, rng: np.random.Generator) -> Element:
    """Minimal or maximal with equal probability."""
    return random_tripotent(factor, rng, rank=1 if rng.random() < 0.5 else 2)
