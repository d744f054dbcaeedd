"""
Cartan factors of types 1-4, finite direct sums, and their triple product.

Matrix kinds (rect, skew, herm) store dense complex matrices and use
{x,y,z} = 1/2 (x y* z + z y* x). The spin factor stores a coordinate vector
in C^d with entrywise conjugation and

    {x,y,z} = <x,y> z + <z,y> x - <x, conj(z)> conj(y),   <x,y> = sum x_i conj(y_i).

Every factor also carries an orthonormal coordinate basis (matrix units,
(E_ij +/- E_ji)/sqrt(2), or e_k). Linear maps between factors are matrices
on these coordinates.
"""

from __future__ import annotations

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from .errors import ShapeError
from .tolerance import DEFAULT_TOLERANCE, Tolerance

_SQRT2 = np.sqrt(2.0)


class FactorKind(str, Enum):
    RECT = "rect"
    SKEW = "skew"
    HERM = "herm"
    SPIN = "spin"
    SUM = "sum"


MATRIX_KINDS = (FactorKind.RECT, FactorKind.SKEW, FactorKind.HERM)


@dataclass(frozen=True)
class FactorDescriptor:
    """Which Cartan factor (kind + dimensions), or a flat finite direct sum.

    ``rect`` uses (m, n); ``skew`` and ``herm`` use n; ``spin`` keeps its
    dimension d in n; ``sum`` lists its (non-sum) components.
    """

    kind: FactorKind
    m: int = 0
    n: int = 0
    components: tuple[FactorDescriptor, ...] = ()

    def __post_init__(self):
        kind = FactorKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind == FactorKind.RECT:
            if self.m < 1 or self.n < 1:
                raise ShapeError(f"rect needs positive dimensions, got ({self.m}, {self.n})")
        elif kind == FactorKind.SKEW:
            if self.n < 2:
                raise ShapeError(f"skew needs n >= 2, got {self.n}")
            object.__setattr__(self, "m", self.n)
        elif kind == FactorKind.HERM:
            if self.n < 1:
                raise ShapeError(f"herm needs n >= 1, got {self.n}")
            object.__setattr__(self, "m", self.n)
        elif kind == FactorKind.SPIN:
            if self.n < 3:
                raise ShapeError(f"spin needs dimension >= 3, got {self.n}")
            object.__setattr__(self, "m", 0)
        else:
            flat: list[FactorDescriptor] = []
            for component in self.components:
                if component.kind == FactorKind.SUM:
                    flat.extend(component.components)
                else:
                    flat.append(component)
            if not flat:
                raise ShapeError("a direct sum needs at least one component")
            object.__setattr__(self, "components", tuple(flat))
            object.__setattr__(self, "m", 0)
            object.__setattr__(self, "n", 0)

    def __str__(self) -> str:
        if self.kind == FactorKind.RECT:
            return f"rect({self.m},{self.n})"
        if self.kind == FactorKind.SUM:
            return "sum(" + ", ".join(str(c) for c in self.components) + ")"
        return f"{self.kind.value}({self.n})"

    @property
    def is_matrix(self) -> bool:
        return self.kind in MATRIX_KINDS

    @property
    def is_sum(self) -> bool:
        return self.kind == FactorKind.SUM

    @property
    def dim(self) -> int:
        """Dimension parameter of a spin factor."""
        return self.n

    @property
    def shape(self) -> tuple[int, ...] | None:
        if self.kind == FactorKind.SPIN:
            return (self.n,)
        if self.is_matrix:
            return (self.m, self.n)
        return None

    @property
    def complex_dim(self) -> int:
        if self.kind == FactorKind.RECT:
            return self.m * self.n
        if self.kind == FactorKind.SKEW:
            return self.n * (self.n - 1) // 2
        if self.kind == FactorKind.HERM:
            return self.n * (self.n + 1) // 2
        if self.kind == FactorKind.SPIN:
            return self.n
        return sum(c.complex_dim for c in self.components)

    @property
    def rank(self) -> int:
        if self.kind == FactorKind.RECT:
            return min(self.m, self.n)
        if self.kind == FactorKind.SKEW:
            return self.n // 2
        if self.kind == FactorKind.HERM:
            return self.n
        if self.kind == FactorKind.SPIN:
            return 2
        return sum(c.rank for c in self.components)

    @property
    def has_unitary(self) -> bool:
        if self.kind == FactorKind.RECT:
            return self.m == self.n
        if self.kind == FactorKind.SKEW:
            return self.n % 2 == 0
        if self.kind == FactorKind.SUM:
            return all(c.has_unitary for c in self.components)
        return True

    @property
    def supports_reconstruction(self) -> bool:
        """Spin factors and rect factors of rank >= 2 (and sums of them)."""
        if self.kind == FactorKind.SPIN:
            return True
        if self.kind == FactorKind.RECT:
            return min(self.m, self.n) >= 2
        if self.kind == FactorKind.SUM:
            return all(c.supports_reconstruction for c in self.components)
        return False

    def unit(self) -> Element:
        """A canonical complete tripotent (unitary when the factor admits one)."""
        if self.kind == FactorKind.SPIN:
            data = np.zeros(self.n, dtype=complex)
            data[0] = 1.0
            return Element(self, data)
        if self.kind == FactorKind.SUM:
            return Element(self, tuple(c.unit() for c in self.components))
        data = np.zeros((self.m, self.n), dtype=complex)
        if self.kind == FactorKind.SKEW:
            for k in range(self.n // 2):
                data[2 * k, 2 * k + 1] = 1.0
                data[2 * k + 1, 2 * k] = -1.0
        else:
            for k in range(min(self.m, self.n)):
                data[k, k] = 1.0
        return Element(self, data)


def rect(m: int, n: int) -> FactorDescriptor:
    return FactorDescriptor(FactorKind.RECT, m=m, n=n)


def skew(n: int) -> FactorDescriptor:
    return FactorDescriptor(FactorKind.SKEW, n=n)


def herm(n: int) -> FactorDescriptor:
    return FactorDescriptor(FactorKind.HERM, n=n)


def spin(d: int) -> FactorDescriptor:
    return FactorDescriptor(FactorKind.SPIN, n=d)


def direct_sum(*factors: FactorDescriptor) -> FactorDescriptor:
    """Flat direct sum; nested sums are spliced in place."""
    return FactorDescriptor(FactorKind.SUM, components=tuple(factors))


@dataclass(frozen=True, eq=False)
class Element:
    """A point of a factor.

    ``data`` is a read-only complex array (matrix or spin vector), or for sums
    a tuple of component Elements. Skew/herm symmetry is checked against the
    default tolerance and repaired by (anti)symmetrization.
    """

    factor: FactorDescriptor
    data: Any

    def __post_init__(self):
        factor = self.factor
        if factor.is_sum:
            parts = tuple(self.data)
            if len(parts) != len(factor.components):
                raise ShapeError(
                    f"{factor} has {len(factor.components)} components, got {len(parts)}"
                )
            normalized = []
            for component, part in zip(factor.components, parts):
                if isinstance(part, Element):
                    if part.factor != component:
                        raise ShapeError(f"component {part.factor} does not match {component}")
                    normalized.append(part)
                else:
                    normalized.append(Element(component, part))
            object.__setattr__(self, "data", tuple(normalized))
            return

        array = np.array(self.data, dtype=complex)
        if array.shape != factor.shape:
            raise ShapeError(f"{factor} expects shape {factor.shape}, got {array.shape}")
        if factor.kind in (FactorKind.SKEW, FactorKind.HERM):
            array = _repair_symmetry(array, factor.kind, DEFAULT_TOLERANCE)
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    def __repr__(self) -> str:
        return f"Element({self.factor}, {np.array2string(self.to_array(), precision=4)})"

    # -- structure ---------------------------------------------------------

    @property
    def components(self) -> tuple[Element, ...]:
        if not self.factor.is_sum:
            return (self,)
        return self.data

    def component(self, index: int) -> Element:
        if not self.factor.is_sum:
            raise ShapeError(f"{self.factor} is not a direct sum")
        return self.data[index]

    def to_array(self) -> np.ndarray:
        """Data as one array (sums are concatenated coordinates)."""
        if self.factor.is_sum:
            return to_coords(self)
        return self.data

    def is_zero(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        return norm(self) <= tol.bound()

    # -- arithmetic --------------------------------------------------------

    def _same_factor(self, other: Element) -> None:
        if not isinstance(other, Element) or other.factor != self.factor:
            raise ShapeError(
                f"factor mismatch: {self.factor} vs {getattr(other, 'factor', type(other).__name__)}"
            )

    def __add__(self, other: Element) -> Element:
        self._same_factor(other)
        if self.factor.is_sum:
            return Element(self.factor, tuple(a + b for a, b in zip(self.data, other.data)))
        return Element(self.factor, self.data + other.data)

    def __sub__(self, other: Element) -> Element:
        self._same_factor(other)
        if self.factor.is_sum:
            return Element(self.factor, tuple(a - b for a, b in zip(self.data, other.data)))
        return Element(self.factor, self.data - other.data)

    def __neg__(self) -> Element:
        return self * -1.0

    def __mul__(self, scalar: complex) -> Element:
        if isinstance(scalar, Element):
            return NotImplemented
        if self.factor.is_sum:
            return Element(self.factor, tuple(part * scalar for part in self.data))
        return Element(self.factor, self.data * complex(scalar))

    __rmul__ = __mul__

    def conj(self) -> Element:
        """Entrywise conjugation (the spin conjugation for spin factors)."""
        if self.factor.is_sum:
            return Element(self.factor, tuple(part.conj() for part in self.data))
        return Element(self.factor, np.conj(self.data))


def _repair_symmetry(array: np.ndarray, kind: FactorKind, tol: Tolerance) -> np.ndarray:
    sign = -1.0 if kind == FactorKind.SKEW else 1.0
    residual = float(np.max(np.abs(array - sign * array.T), initial=0.0))
    scale = float(np.max(np.abs(array), initial=0.0))
    if not tol.accepts(residual, scale):
        label = "antisymmetric" if kind == FactorKind.SKEW else "symmetric"
        raise ShapeError(f"matrix is not {label} (residual {residual:.3e})")
    return 0.5 * (array + sign * array.T)


def element(factor: FactorDescriptor, data: Any) -> Element:
    return Element(factor, data)


def zeros(factor: FactorDescriptor) -> Element:
    if factor.is_sum:
        return Element(factor, tuple(zeros(c) for c in factor.components))
    return Element(factor, np.zeros(factor.shape, dtype=complex))


def embed(factor: FactorDescriptor, index: int, part: Element) -> Element:
    """Place ``part`` in summand ``index`` of ``factor``, zeros elsewhere."""
    if not factor.is_sum:
        raise ShapeError(f"{factor} is not a direct sum")
    parts = [zeros(c) for c in factor.components]
    if part.factor != factor.components[index]:
        raise ShapeError(f"{part.factor} does not match summand {factor.components[index]}")
    parts[index] = part
    return Element(factor, tuple(parts))


def _check_shared(*elements: Element) -> FactorDescriptor:
    factor = elements[0].factor
    for other in elements[1:]:
        if other.factor != factor:
            raise ShapeError(f"factor mismatch: {factor} vs {other.factor}")
    return factor


# =============================================================================
# Triple product and norm
# =============================================================================


def spin_inner(x: np.ndarray, y: np.ndarray) -> complex:
    """<x, y> = sum x_i conj(y_i)."""
    return complex(np.sum(x * np.conj(y)))


def _spin_triple(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    # <x, conj(z)> = sum x_i z_i, written so that swapping x and z is exact
    return (spin_inner(x, y) * z + spin_inner(z, y) * x) - complex(np.sum(x * z)) * np.conj(y)


def _matrix_triple(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    y_star = y.conj().T
    return 0.5 * ((x @ y_star) @ z + (z @ y_star) @ x)


def triple_product(x: Element, y: Element, z: Element) -> Element:
    """{x, y, z}; symmetric in (x, z), conjugate-linear in y, component-wise on sums."""
    factor = _check_shared(x, y, z)
    if factor.is_sum:
        return Element(
            factor,
            tuple(triple_product(a, b, c) for a, b, c in zip(x.data, y.data, z.data)),
        )
    if factor.kind == FactorKind.SPIN:
        return Element(factor, _spin_triple(x.data, y.data, z.data))
    return Element(factor, _matrix_triple(x.data, y.data, z.data))


def quadratic_map(u: Element, x: Element) -> Element:
    """Q(u)x = {u, x, u}."""
    return triple_product(u, x, u)


def norm(x: Element) -> float:
    """JB*-triple norm: operator norm, the spin formula, or the max over summands."""
    factor = x.factor
    if factor.is_sum:
        return max(norm(part) for part in x.data)
    if factor.kind == FactorKind.SPIN:
        xx = spin_inner(x.data, x.data).real
        det = abs(complex(np.sum(x.data * x.data)))
        return float(np.sqrt(max(xx + np.sqrt(max(xx * xx - det * det, 0.0)), 0.0)))
    if not np.any(x.data):
        return 0.0
    return float(np.linalg.norm(x.data, 2))


def random_element(factor: FactorDescriptor, seed: int | np.random.Generator) -> Element:
    """Standard complex Gaussian coordinates, (anti)symmetrized for herm/skew."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if factor.is_sum:
        return Element(factor, tuple(random_element(c, rng) for c in factor.components))
    data = crandn(factor.shape, rng)
    if factor.kind == FactorKind.HERM:
        data = 0.5 * (data + data.T)
    elif factor.kind == FactorKind.SKEW:
        data = 0.5 * (data - data.T)
    return Element(factor, data)


def crandn(size, rng: np.random.Generator) -> np.ndarray:
    """Standard complex normal samples."""
    # 1/sqrt(2) is a normalization factor
    return (rng.normal(size=size) + 1j * rng.normal(size=size)) / _SQRT2


# =============================================================================
# Coordinates
# =============================================================================


@functools.lru_cache(maxsize=None)
def _offdiag(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def to_coords(x: Element) -> np.ndarray:
    """Coordinates of ``x`` in the orthonormal basis of its factor."""
    factor = x.factor
    if factor.is_sum:
        return np.concatenate([to_coords(part) for part in x.data])
    if factor.kind in (FactorKind.RECT, FactorKind.SPIN):
        return np.array(x.data, dtype=complex).reshape(-1)
    rows, cols = _offdiag(factor.n)
    off = _SQRT2 * x.data[rows, cols]
    if factor.kind == FactorKind.SKEW:
        return np.array(off, dtype=complex)
    return np.concatenate([np.diag(x.data), off])


def from_coords(factor: FactorDescriptor, coords: Sequence[complex] | np.ndarray) -> Element:
    """Inverse of ``to_coords``."""
    v = np.asarray(coords, dtype=complex)
    if v.shape != (factor.complex_dim,):
        raise ShapeError(f"{factor} has {factor.complex_dim} coordinates, got shape {v.shape}")
    if factor.is_sum:
        parts = []
        offset = 0
        for component in factor.components:
            size = component.complex_dim
            parts.append(from_coords(component, v[offset : offset + size]))
            offset += size
        return Element(factor, tuple(parts))
    if factor.kind in (FactorKind.RECT, FactorKind.SPIN):
        return Element(factor, v.reshape(factor.shape))
    n = factor.n
    data = np.zeros((n, n), dtype=complex)
    rows, cols = _offdiag(n)
    if factor.kind == FactorKind.SKEW:
        data[rows, cols] = v / _SQRT2
        data[cols, rows] = -v / _SQRT2
    else:
        data[np.arange(n), np.arange(n)] = v[:n]
        data[rows, cols] = v[n:] / _SQRT2
        data[cols, rows] = v[n:] / _SQRT2
    return Element(factor, data)


@functools.lru_cache(maxsize=None)
def basis(factor: FactorDescriptor) -> tuple[Element, ...]:
    """Orthonormal basis with real entries (so it is fixed by conjugation)."""
    identity = np.eye(factor.complex_dim, dtype=complex)
    return tuple(from_coords(factor, identity[k]) for k in range(factor.complex_dim))


def inner(x: Element, y: Element) -> complex:
    """Ambient coordinate inner product <<x, y>>, conjugate-linear in y."""
    _check_shared(x, y)
    return complex(np.vdot(to_coords(y), to_coords(x)))


def triple_operator(a: Element, b: Element) -> np.ndarray:
    """Matrix of L(a, b): x -> {a, b, x} on coordinates."""
    factor = _check_shared(a, b)
    columns = [to_coords(triple_product(a, b, e)) for e in basis(factor)]
    return np.column_stack(columns)


def stack_coords(elements: Iterable[Element]) -> np.ndarray:
    """Coordinates of several elements as the columns of one matrix."""
    return np.column_stack([to_coords(e) for e in elements])
