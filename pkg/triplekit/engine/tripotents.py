"""
Tripotent calculus: Peirce decomposition, order, orthogonality, rank and
the special configurations (collinear, governing, quadrangle, trangle).

Every predicate takes an explicit Tolerance and compares a residual norm
against ``tol.bound(scale...)``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import DegeneracyError, NotATripotentError, PreconditionError
from .factors import (
    Element,
    FactorKind,
    from_coords,
    inner,
    norm,
    quadratic_map,
    to_coords,
    triple_operator,
    triple_product,
)
from .tolerance import DEFAULT_TOLERANCE, Tolerance

logger = logging.getLogger(__name__)

# Maximum drift of an L(e,e) eigenvalue from {0, 1/2, 1}
EIGENVALUE_SNAP = 1e-6

PEIRCE_INDICES = (2, 1, 0)


def is_tripotent(e: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True when {e,e,e} = e; the zero element counts."""
    residual = norm(triple_product(e, e, e) - e)
    return tol.accepts(residual, norm(e))


def require_tripotent(e: Element, tol: Tolerance = DEFAULT_TOLERANCE, name: str = "e") -> None:
    if not is_tripotent(e, tol):
        residual = norm(triple_product(e, e, e) - e)
        raise NotATripotentError(f"{name} is not a tripotent (residual {residual:.3e})")


# =============================================================================
# Peirce decomposition
# =============================================================================


@dataclass(frozen=True, eq=False)
class PeirceData:
    """Peirce decomposition of a tripotent.

    ``bases`` holds orthonormal coordinate bases (as matrix columns) of
    E_2(e), E_1(e), E_0(e) in that order; ``dims`` matches.
    """

    e: Element
    dims: tuple[int, int, int]
    bases: tuple[np.ndarray, np.ndarray, np.ndarray]
    eigenvalues: np.ndarray

    def basis(self, k: int) -> np.ndarray:
        return self.bases[PEIRCE_INDICES.index(k)]

    def project(self, k: int, x: Element) -> Element:
        """P_k(e)x through the eigenprojection."""
        b = self.basis(k)
        coords = b @ (b.conj().T @ to_coords(x))
        return from_coords(x.factor, coords)

    def project_closed(self, k: int, x: Element) -> Element:
        """P_k(e)x through the closed forms in L(e,e) and Q(e)."""
        e = self.e
        q2x = quadratic_map(e, quadratic_map(e, x))
        if k == 2:
            return q2x
        lx = triple_product(e, e, x)
        if k == 1:
            return 2.0 * (lx - q2x)
        if k == 0:
            return x - 2.0 * lx + q2x
        raise ValueError(f"Peirce index must be 0, 1 or 2, got {k}")

    def decompose(self, x: Element) -> tuple[Element, Element, Element]:
        """(P_2 x, P_1 x, P_0 x)."""
        return tuple(self.project(k, x) for k in PEIRCE_INDICES)

    def closed_form_residual(self, x: Element) -> float:
        """Largest disagreement between the two projection paths on ``x``."""
        return max(norm(self.project(k, x) - self.project_closed(k, x)) for k in PEIRCE_INDICES)


def peirce(e: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> PeirceData:
    """Diagonalize L(e,e) and group eigenvectors by eigenvalue 1, 1/2, 0.

    Raises:
        NotATripotentError: If ``e`` is not a tripotent.
        DegeneracyError: If an eigenvalue is off the {0, 1/2, 1} grid.
    """
    require_tripotent(e, tol)
    operator = triple_operator(e, e)
    # L(e,e) is hermitian on orthonormal coordinates
    hermitian = 0.5 * (operator + operator.conj().T)
    values, vectors = scipy.linalg.eigh(hermitian)

    grid = np.array([1.0, 0.5, 0.0])
    groups: list[list[int]] = [[], [], []]
    for index, value in enumerate(values):
        slot = int(np.argmin(np.abs(grid - value)))
        if abs(grid[slot] - value) > EIGENVALUE_SNAP:
            raise DegeneracyError(f"L(e,e) eigenvalue {value:.6g} is off the Peirce grid")
        groups[slot].append(index)

    bases = tuple(np.array(vectors[:, idx], dtype=complex) for idx in groups)
    for b in bases:
        b.setflags(write=False)
    dims = tuple(len(idx) for idx in groups)
    logger.debug("peirce dims %s for %s", dims, e.factor)
    return PeirceData(e=e, dims=dims, bases=bases, eigenvalues=values)


def in_peirce_space(e: Element, k: int, x: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True when L(e,e)x = (k/2) x, i.e. x lies in E_k(e)."""
    residual = norm(triple_product(e, e, x) - (k / 2.0) * x)
    return tol.accepts(residual, norm(x), norm(e))


# =============================================================================
# Order and orthogonality
# =============================================================================


def orthogonal_unchecked(e: Element, u: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Orthogonality test without checking that the inputs are tripotents."""
    scale = (norm(e), norm(u))
    return tol.accepts(norm(triple_product(e, e, u)), *scale) and tol.accepts(
        norm(triple_product(u, u, e)), *scale
    )


def is_orthogonal(e: Element, u: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Symmetric orthogonality test: {e,e,u} = 0 and {u,u,e} = 0."""
    require_tripotent(e, tol, "e")
    require_tripotent(u, tol, "u")
    return orthogonal_unchecked(e, u, tol)


def leq_unchecked(e: Element, u: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    difference = u - e
    return is_tripotent(difference, tol) and orthogonal_unchecked(difference, e, tol)


def leq(e: Element, u: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """e <= u iff u - e is a tripotent orthogonal to e."""
    require_tripotent(e, tol, "e")
    require_tripotent(u, tol, "u")
    return leq_unchecked(e, u, tol)


class TripotentClass(str, Enum):
    ZERO = "zero"
    MINIMAL = "minimal"
    COMPLETE = "complete"
    UNITARY = "unitary"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class TripotentClassification:
    kind: TripotentClass
    rank: int
    dims: tuple[int, int, int]

    @property
    def is_minimal(self) -> bool:
        return self.kind == TripotentClass.MINIMAL

    @property
    def is_complete(self) -> bool:
        """Unitaries are complete too."""
        return self.kind in (TripotentClass.COMPLETE, TripotentClass.UNITARY)


def _rank(e: Element, dims: tuple[int, int, int], tol: Tolerance) -> int:
    factor = e.factor
    if factor.is_sum:
        return sum(_rank(part, peirce(part, tol).dims, tol) for part in e.components)
    if norm(e) <= tol.bound():
        return 0
    if factor.kind == FactorKind.SPIN:
        return 1 if dims[0] == 1 else 2
    singular = scipy.linalg.svdvals(e.data)
    count = int(np.sum(singular > tol.bound(float(singular.max()))))
    # singular values of an antisymmetric partial isometry come in pairs
    return count // 2 if factor.kind == FactorKind.SKEW else count


def classify(e: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> TripotentClassification:
    """Zero, unitary, minimal, complete or intermediate (checked in that order)."""
    data = peirce(e, tol)
    d2, _, d0 = data.dims
    total = e.factor.complex_dim
    if d2 == 0:
        kind = TripotentClass.ZERO
    elif d2 == total:
        kind = TripotentClass.UNITARY
    elif d2 == 1:
        kind = TripotentClass.MINIMAL
    elif d0 == 0:
        kind = TripotentClass.COMPLETE
    else:
        kind = TripotentClass.INTERMEDIATE
    return TripotentClassification(kind=kind, rank=_rank(e, data.dims, tol), dims=data.dims)


# =============================================================================
# Special configurations
# =============================================================================


def is_collinear(u: Element, v: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """u ⊤ v: u in E_1(v) and v in E_1(u)."""
    require_tripotent(u, tol, "u")
    require_tripotent(v, tol, "v")
    return in_peirce_space(v, 1, u, tol) and in_peirce_space(u, 1, v, tol)


def governs(u: Element, v: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """u ⊢ v: v in E_2(u) and u in E_1(v)."""
    require_tripotent(u, tol, "u")
    require_tripotent(v, tol, "v")
    return in_peirce_space(u, 2, v, tol) and in_peirce_space(v, 1, u, tol)


def is_quadrangle(
    u1: Element, u2: Element, u3: Element, u4: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Opposite corners orthogonal, neighbours collinear, u4 = 2{u1,u2,u3}."""
    for index, u in enumerate((u1, u2, u3, u4), start=1):
        require_tripotent(u, tol, f"u{index}")
    if not (orthogonal_unchecked(u1, u3, tol) and orthogonal_unchecked(u2, u4, tol)):
        return False
    cycle = ((u1, u2), (u2, u3), (u3, u4), (u4, u1))
    if not all(is_collinear(a, b, tol) for a, b in cycle):
        return False
    closing = 2.0 * triple_product(u1, u2, u3)
    return tol.accepts(norm(closing - u4), norm(u4))


def is_trangle(v: Element, u: Element, v_tilde: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """v ⊥ ṽ, u governs both, and v = Q(u)ṽ."""
    for name, x in (("v", v), ("u", u), ("v_tilde", v_tilde)):
        require_tripotent(x, tol, name)
    if not orthogonal_unchecked(v, v_tilde, tol):
        return False
    if not (governs(u, v, tol) and governs(u, v_tilde, tol)):
        return False
    return tol.accepts(norm(quadratic_map(u, v_tilde) - v), norm(v))


def scalar_multiple_below(
    u: Element, v: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> complex | None:
    """The unimodular γ with γv <= u, or None when no multiple of v lies below u.

    Decided by P_2(v)u = γv and P_1(v)u = 0.
    """
    require_tripotent(u, tol, "u")
    require_tripotent(v, tol, "v")
    if norm(u) <= tol.bound() or norm(v) <= tol.bound():
        raise PreconditionError("scalar_multiple_below needs nonzero tripotents")
    q2u = quadratic_map(v, quadratic_map(v, u))
    p1u = 2.0 * (triple_product(v, v, u) - q2u)
    scale = norm(u)
    if not tol.accepts(norm(p1u), scale):
        return None
    gamma = inner(q2u, v) / inner(v, v)
    if not tol.accepts(norm(q2u - gamma * v), scale):
        return None
    if abs(abs(gamma) - 1.0) > tol.bound():
        return None
    return complex(gamma / abs(gamma))


def orthogonal_sum(elements: Sequence[Element], tol: Tolerance = DEFAULT_TOLERANCE) -> Element:
    """Sum of mutually orthogonal tripotents, which is again a tripotent.

    Raises:
        PreconditionError: If the list is empty or a pair is not orthogonal.
    """
    if not elements:
        raise PreconditionError("orthogonal_sum needs at least one tripotent")
    for index, e in enumerate(elements):
        require_tripotent(e, tol, f"elements[{index}]")
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if not orthogonal_unchecked(elements[i], elements[j], tol):
                raise PreconditionError(f"elements {i} and {j} are not orthogonal")
    total = elements[0]
    for e in elements[1:]:
        total = total + e
    require_tripotent(total, tol, "orthogonal sum")
    return total


def _bound_in_family(elements: Sequence[Element], tol: Tolerance, upper: bool) -> Element | None:
    for candidate in elements:
        if all(
            leq_unchecked(e, candidate, tol) if upper else leq_unchecked(candidate, e, tol)
            for e in elements
        ):
            return candidate
    return None


def _mutually_orthogonal(elements: Sequence[Element], tol: Tolerance) -> bool:
    return all(
        orthogonal_unchecked(elements[i], elements[j], tol)
        for i in range(len(elements))
        for j in range(i + 1, len(elements))
    )


def tripotent_join(elements: Sequence[Element], tol: Tolerance = DEFAULT_TOLERANCE) -> Element | None:
    """Supremum in the tripotent order when the family settles it, else None.

    A member above all the others is the supremum; a mutually orthogonal
    family has its sum as supremum. Zero members are ignored.

    Raises:
        PreconditionError: If the family is empty.
    """
    if not elements:
        raise PreconditionError("tripotent_join needs at least one tripotent")
    for index, e in enumerate(elements):
        require_tripotent(e, tol, f"elements[{index}]")
    nonzero = [e for e in elements if not e.is_zero(tol)]
    if not nonzero:
        return elements[0]
    top = _bound_in_family(nonzero, tol, upper=True)
    if top is not None:
        return top
    if _mutually_orthogonal(nonzero, tol):
        return orthogonal_sum(nonzero, tol)
    return None


def tripotent_meet(elements: Sequence[Element], tol: Tolerance = DEFAULT_TOLERANCE) -> Element | None:
    """Infimum in the tripotent order when the family settles it, else None.

    A member below all the others is the infimum; two or more mutually
    orthogonal tripotents have infimum 0.

    Raises:
        PreconditionError: If the family is empty.
    """
    if not elements:
        raise PreconditionError("tripotent_meet needs at least one tripotent")
    for index, e in enumerate(elements):
        require_tripotent(e, tol, f"elements[{index}]")
    bottom = _bound_in_family(elements, tol, upper=False)
    if bottom is not None:
        return bottom
    if _mutually_orthogonal(elements, tol):
        return 0.0 * elements[0]
    return None
