"""
Phase maps: Φ(λu) = f_u(λ) Φ(u) for unimodular λ.

Under the continuity hypothesis f is the identity or complex conjugation on
the circle, which decides whether the extension is linear or conjugate-linear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchError, PreconditionError, StructureError
from .factors import Element, inner, norm
from .maps import Branch
from .oracles import TripotentOracle
from .sampling import make_rng, random_phase, random_tripotent
from .tolerance import DEFAULT_TOLERANCE, Tolerance


def extract_phase(
    oracle: TripotentOracle, u: Element, lam: complex, tol: Tolerance = DEFAULT_TOLERANCE
) -> complex:
    """f_u(λ) = <<Φ(λu), Φ(u)>> / <<Φ(u), Φ(u)>>, normalized to modulus one.

    Raises:
        PreconditionError: If Φ(u) vanishes.
        StructureError: If Φ(λu) is not a unimodular multiple of Φ(u).
    """
    image = oracle(u)
    scale = norm(image)
    if scale <= tol.bound():
        raise PreconditionError("Φ(u) is zero; the phase map needs a nonzero image")
    rotated = oracle(complex(lam) * u)
    f = inner(rotated, image) / inner(image, image)
    residual = norm(rotated - f * image)
    if not tol.accepts(residual, scale):
        raise StructureError(f"Φ(λu) is not a scalar multiple of Φ(u) (residual {residual:.3e})")
    if not tol.accepts(abs(abs(f) - 1.0)):
        raise StructureError(f"phase |f(λ)| = {abs(f):.6g} is not unimodular")
    return complex(f / abs(f))


def detect_branch(oracle: TripotentOracle, u: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> Branch:
    """Linear when f_u(i) = i, antilinear when f_u(i) = -i.

    Raises:
        BranchError: If f_u(i) is neither.
    """
    f = extract_phase(oracle, u, 1j, tol)
    if tol.accepts(abs(f - 1j)):
        return Branch.LINEAR
    if tol.accepts(abs(f + 1j)):
        return Branch.ANTILINEAR
    raise BranchError(f"f(i) = {f.real:.6g}{f.imag:+.6g}i is neither i nor -i; the phase map is not continuous")


@dataclass(frozen=True)
class PhaseMapReport:
    n_samples: int
    multiplicativity: float
    conjugation_symmetry: float
    minus_one: float
    cross_tripotent: float
    f_i: complex

    @property
    def max_residual(self) -> float:
        return max(self.multiplicativity, self.conjugation_symmetry, self.minus_one, self.cross_tripotent)

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "multiplicativity": self.multiplicativity,
            "conjugation_symmetry": self.conjugation_symmetry,
            "minus_one": self.minus_one,
            "cross_tripotent": self.cross_tripotent,
            "f_i": [self.f_i.real, self.f_i.imag],
        }


def phase_map_report(
    oracle: TripotentOracle,
    u: Element,
    n_samples: int,
    seed: int | np.random.Generator = 0,
    other: Element | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> PhaseMapReport:
    """Sample the group laws of f_u and its agreement with f at a second tripotent."""
    rng = make_rng(seed)
    if other is None:
        other = random_tripotent(u.factor, rng)
    multiplicativity = conjugation = cross = 0.0
    for _ in range(n_samples):
        lam, mu = random_phase(rng), random_phase(rng)
        f_lam = extract_phase(oracle, u, lam, tol)
        f_mu = extract_phase(oracle, u, mu, tol)
        multiplicativity = max(multiplicativity, abs(extract_phase(oracle, u, lam * mu, tol) - f_lam * f_mu))
        conjugation = max(conjugation, abs(extract_phase(oracle, u, np.conj(lam), tol) - np.conj(f_lam)))
        cross = max(cross, abs(extract_phase(oracle, other, lam, tol) - f_lam))
    return PhaseMapReport(
        n_samples=n_samples,
        multiplicativity=float(multiplicativity),
        conjugation_symmetry=float(conjugation),
        minus_one=float(abs(extract_phase(oracle, u, -1.0, tol) + 1.0)),
        cross_tripotent=float(cross),
        f_i=extract_phase(oracle, u, 1j, tol),
    )
