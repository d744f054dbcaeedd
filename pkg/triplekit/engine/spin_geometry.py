"""
Spin factor geometry.

Tripotent parametrization (maximal u = λa, minimal v = λ/2 (a + ib)), the
2x2 matrix model of spin(4) and the realizations of spin(3) and spin(6)
as herm(2) and skew(4), the determinant, the Minkowski embedding,
spin-state operators and the SL(2,C) action that carries Lorentz boosts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import PreconditionError, ShapeError
from .factors import Element, FactorDescriptor, FactorKind, herm, norm, rect, skew, spin, stack_coords
from .maps import RealLinearMap
from .tolerance import DEFAULT_TOLERANCE, Tolerance
from .tripotents import leq, require_tripotent

logger = logging.getLogger(__name__)

SPIN4 = spin(4)

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# ê_0 = I, ê_j = -i σ_j; orthonormal for 1/2 tr(X Y*)
E_HAT = (PAULI[0],) + tuple(-1j * sigma for sigma in PAULI[1:])

for _matrix in PAULI + E_HAT:
    _matrix.setflags(write=False)

# Left and right quaternion units on R^4: each triple anticommutes within itself
# and commutes with the other, so A_1, A_2, A_3, iB_1, iB_2, iB_3 is a spin frame of skew(4)
_EPS = np.array([[0, 1], [-1, 0]], dtype=complex)
SKEW4_FRAME = (
    np.kron(_EPS, PAULI[0]),
    np.kron(PAULI[1], _EPS),
    np.kron(PAULI[3], _EPS),
    1j * np.kron(PAULI[0], _EPS),
    1j * np.kron(_EPS, PAULI[1]),
    1j * np.kron(_EPS, PAULI[3]),
)

# Cartan factors that are spin factors: images of e_0, ..., e_{d-1}
SPIN_MODEL_FRAMES = {
    (3, herm(2)): (E_HAT[0], E_HAT[1], E_HAT[3]),
    (4, rect(2, 2)): E_HAT,
    (6, skew(4)): SKEW4_FRAME,
}


class SpinKind(str, Enum):
    ZERO = "zero"
    MINIMAL = "minimal"
    MAXIMAL = "maximal"


@dataclass(frozen=True, eq=False)
class SpinClassification:
    """u = λa (maximal) or u = λ/2 (a + ib) (minimal) with a, b real."""

    kind: SpinKind
    phase: complex = 1.0
    a: np.ndarray | None = None
    b: np.ndarray | None = None

    def element(self, factor: FactorDescriptor) -> Element:
        """Rebuild the tripotent from its parameters."""
        if self.kind == SpinKind.ZERO:
            return Element(factor, np.zeros(factor.dim, dtype=complex))
        if self.kind == SpinKind.MAXIMAL:
            return Element(factor, self.phase * self.a)
        return Element(factor, 0.5 * self.phase * (self.a + 1j * self.b))


@dataclass(frozen=True)
class SpacetimeVector:
    """Real four-vector (a0, a1, a2, a3) in natural units."""

    a0: float
    a1: float
    a2: float
    a3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.a2, self.a3], dtype=float)

    @property
    def minkowski_norm(self) -> float:
        return self.a0**2 - self.a1**2 - self.a2**2 - self.a3**2


def _require_spin(x: Element, dim: int | None = None) -> None:
    if x.factor.kind != FactorKind.SPIN:
        raise ShapeError(f"expected a spin factor element, got {x.factor}")
    if dim is not None and x.factor.dim != dim:
        raise ShapeError(f"expected spin({dim}), got {x.factor}")


def _normalize_phase(value: complex, tol: Tolerance) -> complex:
    phase = complex(value) / abs(value)
    if phase.real < -tol.bound() or (abs(phase.real) <= tol.bound() and phase.imag < 0):
        phase = -phase
    return phase


def _real_vector(values: np.ndarray, tol: Tolerance, name: str) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    if not tol.accepts(float(np.max(np.abs(values.imag), initial=0.0)), float(np.max(np.abs(values)))):
        raise PreconditionError(f"{name} is not a real vector")
    return np.array(values.real, dtype=float)


# =============================================================================
# Tripotent parametrization
# =============================================================================


def classify_spin_tripotent(u: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> SpinClassification:
    """Zero, maximal (λ, a) or minimal (λ, a, b).

    Maximal phases satisfy Re λ > 0, or Im λ >= 0 when Re λ = 0. Minimal
    tripotents are reported with λ = 1, a = 2 Re v, b = 2 Im v.
    """
    _require_spin(u)
    require_tripotent(u, tol, "u")
    if norm(u) <= tol.bound():
        return SpinClassification(kind=SpinKind.ZERO)

    square = complex(np.sum(u.data * u.data))
    # <u, ū> is λ² for maximal tripotents and 0 for minimal ones
    if abs(square) > 0.5:
        phase = _normalize_phase(np.sqrt(square), tol)
        a = np.real(np.conj(phase) * u.data)
        a = a / np.linalg.norm(a)
        return SpinClassification(kind=SpinKind.MAXIMAL, phase=phase, a=a)

    a = 2.0 * np.real(u.data)
    b = 2.0 * np.imag(u.data)
    return SpinClassification(kind=SpinKind.MINIMAL, phase=1.0 + 0j, a=a, b=b)


def minimal_below(u: Element, b, tol: Tolerance = DEFAULT_TOLERANCE) -> Element:
    """v = λ/2 (a + ib) for u = λa; v <= u and v is minimal.

    Raises:
        PreconditionError: If u is not maximal or b is not a real unit orthogonal to a.
    """
    info = classify_spin_tripotent(u, tol)
    if info.kind != SpinKind.MAXIMAL:
        raise PreconditionError(f"u must be a maximal tripotent, got {info.kind.value}")
    raw = b.data if isinstance(b, Element) else b
    b_real = _real_vector(raw, tol, "b")
    if b_real.shape != info.a.shape:
        raise ShapeError(f"b must have length {info.a.shape[0]}")
    if not tol.accepts(abs(float(np.linalg.norm(b_real)) - 1.0)):
        raise PreconditionError("b must be a unit vector")
    if not tol.accepts(abs(float(info.a @ b_real))):
        raise PreconditionError("b must be orthogonal to the real part of u")
    return Element(u.factor, 0.5 * info.phase * (info.a + 1j * b_real))


def decompose_below(v: Element, u: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> SpinClassification:
    """(λ, a, b) with v = λ/2 (a + ib), for v minimal below the maximal u = λa."""
    info = classify_spin_tripotent(u, tol)
    if info.kind != SpinKind.MAXIMAL:
        raise PreconditionError(f"u must be a maximal tripotent, got {info.kind.value}")
    if classify_spin_tripotent(v, tol).kind != SpinKind.MINIMAL:
        raise PreconditionError("v must be a minimal tripotent")
    if not leq(v, u, tol):
        raise PreconditionError("v is not below u")
    w = 2.0 * np.conj(info.phase) * v.data
    return SpinClassification(kind=SpinKind.MINIMAL, phase=info.phase, a=info.a, b=np.array(w.imag))


def spin_partner(v: Element, u: Element | None = None, tol: Tolerance = DEFAULT_TOLERANCE) -> Element:
    """The minimal tripotent completing v to u, i.e. λ/2 (a - ib).

    Without ``u`` this is the conjugate v̄, the partner below a = v + v̄.
    """
    if u is None:
        if classify_spin_tripotent(v, tol).kind != SpinKind.MINIMAL:
            raise PreconditionError("v must be a minimal tripotent")
        return v.conj()
    decompose_below(v, u, tol)
    return u - v


# =============================================================================
# Matrix model of spin(4)
# =============================================================================


def matrix_rep(x: Element) -> np.ndarray:
    """x̂ = sum x_μ ê_μ."""
    _require_spin(x, 4)
    return sum(coef * basis for coef, basis in zip(x.data, E_HAT))


def inverse_rep(matrix) -> Element:
    """x_μ = 1/2 tr(ê_μ* X)."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 matrix, got shape {m.shape}")
    coords = [0.5 * np.trace(basis.conj().T @ m) for basis in E_HAT]
    return Element(SPIN4, np.array(coords, dtype=complex))


def spin_model(dim: int, target: FactorDescriptor) -> RealLinearMap:
    """Triple isomorphism spin(dim) -> target sending e_k to the k-th frame matrix.

    Raises:
        PreconditionError: If target is not a known realization of spin(dim).
    """
    frame = SPIN_MODEL_FRAMES.get((dim, target))
    if frame is None:
        raise PreconditionError(f"{target} is not a known realization of spin({dim})")
    return RealLinearMap(spin(dim), target, stack_coords(Element(target, f) for f in frame))


def spin_determinant(x: Element) -> complex:
    """det x̂ = sum x_μ² = <x, x̄>."""
    _require_spin(x, 4)
    return complex(np.sum(x.data * x.data))


def minkowski_embed(a: SpacetimeVector) -> np.ndarray:
    """φ(a) = sum a_μ σ_μ; det φ(a) is the Minkowski norm of a."""
    return sum(coef * sigma for coef, sigma in zip(a.as_array(), PAULI))


def spin_state(b, tol: Tolerance = DEFAULT_TOLERANCE) -> Element:
    """ϱ = 1/2 (I + sum b_j σ_j) = 1/2 (ê_0 + i sum b_j ê_j) for a unit Bloch vector b."""
    bloch = np.asarray(b, dtype=float)
    if bloch.shape != (3,):
        raise ShapeError(f"Bloch vector must have 3 entries, got shape {bloch.shape}")
    if not tol.accepts(abs(float(np.linalg.norm(bloch)) - 1.0)):
        raise PreconditionError(f"Bloch vector must be a unit vector, got norm {np.linalg.norm(bloch):.6g}")
    return Element(SPIN4, 0.5 * np.concatenate([[1.0], 1j * bloch]))


def sl2_action(x: Element, a_matrix) -> Element:
    """X -> A X A* in the matrix model."""
    a = np.asarray(a_matrix, dtype=complex)
    if a.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 matrix, got shape {a.shape}")
    return inverse_rep(a @ matrix_rep(x) @ a.conj().T)


def _axis(axis: int) -> np.ndarray:
    if axis not in (1, 2, 3):
        raise PreconditionError(f"axis must be 1, 2 or 3, got {axis}")
    return PAULI[axis]


def boost_matrix(rapidity: float, axis: int) -> np.ndarray:
    return scipy.linalg.expm(0.5 * rapidity * _axis(axis))


def lorentz_boost(x: Element, rapidity: float, axis: int) -> Element:
    """Boost along ``axis``; preserves the spin determinant."""
    _require_spin(x, 4)
    return sl2_action(x, boost_matrix(rapidity, axis))


def spatial_rotation(x: Element, angle: float, axis: int) -> Element:
    """Rotation by ``angle`` about ``axis``; a triple automorphism of spin(4)."""
    _require_spin(x, 4)
    return sl2_action(x, scipy.linalg.expm(-0.5j * angle * _axis(axis)))


def polar_tripotent_part(x: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> Element:
    """Partial isometry of the SVD of x̂, keeping singular values above tolerance."""
    _require_spin(x, 4)
    if norm(x) <= tol.bound():
        raise PreconditionError("polar part of the zero element is undefined")
    left, singular, right_h = scipy.linalg.svd(matrix_rep(x))
    keep = singular > tol.bound(float(singular[0]))
    isometry = left[:, keep] @ right_h[keep, :]
    logger.debug("polar part keeps %d of %d singular values", int(keep.sum()), singular.size)
    return inverse_rep(isometry)
