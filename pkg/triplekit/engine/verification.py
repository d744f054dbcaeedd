"""
Checks of reconstructed maps against their oracles, the four forms of
triple automorphisms of square matrices, and the finite preservation checker.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ClassificationError, ShapeError
from .factors import Element, FactorDescriptor, FactorKind, embed, norm, random_element, triple_product
from .maps import AtomicMap, Branch, RealLinearMap
from .oracles import TripotentOracle
from .sampling import make_rng, random_tripotent
from .tolerance import DEFAULT_TOLERANCE, Tolerance
from .tripotents import classify, leq_unchecked, orthogonal_unchecked, tripotent_join, tripotent_meet

logger = logging.getLogger(__name__)

TripleMap = RealLinearMap | AtomicMap

# Random triples used for the homomorphism check
MAX_TRIPLE_SAMPLES = 100


def canonical_tripotents(factor: FactorDescriptor) -> list[Element]:
    """Matrix units, basis vectors e_k, diagonal units, or elementary skew pairs."""
    if factor.is_sum:
        found = []
        for index, component in enumerate(factor.components):
            found.extend(embed(factor, index, e) for e in canonical_tripotents(component))
        return found
    if factor.kind == FactorKind.SPIN:
        return [Element(factor, row) for row in np.eye(factor.dim, dtype=complex)]
    units = []
    for i in range(factor.m):
        for j in range(factor.n):
            if factor.kind == FactorKind.HERM and i != j:
                continue
            if factor.kind == FactorKind.SKEW and i >= j:
                continue
            data = np.zeros((factor.m, factor.n), dtype=complex)
            data[i, j] = 1.0
            if factor.kind == FactorKind.SKEW:
                data[j, i] = -1.0
            units.append(Element(factor, data))
    return units


@dataclass(frozen=True)
class ExtensionReport:
    n_samples: int
    max_residual: float
    n_triples: int
    triple_residual: float
    isometry_residual: float

    def passes(self, threshold: float) -> bool:
        return max(self.max_residual, self.triple_residual, self.isometry_residual) <= threshold

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "max_residual": self.max_residual,
            "n_triples": self.n_triples,
            "triple_residual": self.triple_residual,
            "isometry_residual": self.isometry_residual,
        }


def verify_extension(
    transform: TripleMap,
    oracle: TripotentOracle,
    n_samples: int,
    seed: int | np.random.Generator = 0,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ExtensionReport:
    """Compare T with Φ on tripotents and check that T is an isometric triple homomorphism.

    Samples are the canonical tripotents of the source followed by
    ``n_samples`` random ones.
    """
    if transform.source != oracle.source or transform.target != oracle.target:
        raise ShapeError(
            f"map {transform.source} -> {transform.target} does not match oracle "
            f"{oracle.source} -> {oracle.target}"
        )
    rng = make_rng(seed)
    factor = transform.source
    samples = canonical_tripotents(factor)
    samples.extend(random_tripotent(factor, rng) for _ in range(n_samples))

    max_residual = 0.0
    for w in samples:
        residual = norm(transform.apply(w) - oracle(w)) / max(1.0, norm(w))
        max_residual = max(max_residual, residual)

    n_triples = min(n_samples, MAX_TRIPLE_SAMPLES)
    triple_residual = isometry_residual = 0.0
    for _ in range(n_triples):
        x, y, z = (random_element(factor, rng) for _ in range(3))
        tx, ty, tz = transform.apply(x), transform.apply(y), transform.apply(z)
        scale = max(1.0, norm(x) * norm(y) * norm(z))
        drift = norm(transform.apply(triple_product(x, y, z)) - triple_product(tx, ty, tz))
        triple_residual = max(triple_residual, drift / scale)
        isometry_residual = max(isometry_residual, abs(norm(tx) - norm(x)) / max(1.0, norm(x)))

    logger.debug("extension check on %d samples: residual %.3e", len(samples), max_residual)
    return ExtensionReport(
        n_samples=len(samples),
        max_residual=float(max_residual),
        n_triples=n_triples,
        triple_residual=float(triple_residual),
        isometry_residual=float(isometry_residual),
    )


# =============================================================================
# Square automorphism forms
# =============================================================================

# (transpose, antilinear) -> form index: U X V, U X̄ V, U Xᵀ V, U X* V
SQUARE_FORMS = {(False, False): 1, (False, True): 2, (True, False): 3, (True, True): 4}


@dataclass(frozen=True, eq=False)
class SquareForm:
    form: int
    u: np.ndarray
    v: np.ndarray
    residual: float

    @property
    def transpose(self) -> bool:
        return self.form in (3, 4)

    @property
    def antilinear(self) -> bool:
        return self.form in (2, 4)

    def apply(self, x: np.ndarray) -> np.ndarray:
        g = x.T if self.transpose else x
        return self.u @ (np.conj(g) if self.antilinear else g) @ self.v


def _unit(n: int, i: int, j: int) -> np.ndarray:
    data = np.zeros((n, n), dtype=complex)
    data[i, j] = 1.0
    return data


def classify_square_automorphism(
    transform: RealLinearMap, tol: Tolerance = DEFAULT_TOLERANCE, seed: int = 0
) -> SquareForm:
    """Write T as X -> U g(X) V with U, V unitary.

    Transposition is detected by whether T(E_11) and T(E_12) share their
    range (plain) or their support (transpose). U is normalized so that its
    first column's first nonzero entry is positive real.

    Raises:
        ClassificationError: If no form fits within tolerance.
    """
    factor = transform.source
    if factor.kind != FactorKind.RECT or factor.m != factor.n or transform.target != factor:
        raise ShapeError(f"square automorphisms act on rect(n,n), got {factor} -> {transform.target}")
    n = factor.n

    def image(x: np.ndarray) -> np.ndarray:
        return transform.apply(Element(factor, x)).data

    first, second = image(_unit(n, 0, 0)), image(_unit(n, 0, 1))
    left_drift = np.linalg.norm(first @ first.conj().T - second @ second.conj().T)
    right_drift = np.linalg.norm(first.conj().T @ first - second.conj().T @ second)
    if tol.accepts(left_drift):
        transpose = False
    elif tol.accepts(right_drift):
        transpose = True
    else:
        raise ClassificationError("T(E_11) and T(E_12) share neither range nor support")

    def plain(i: int, j: int) -> np.ndarray:
        return image(_unit(n, j, i) if transpose else _unit(n, i, j))

    left, _, _ = scipy.linalg.svd(plain(0, 0))
    u1 = left[:, 0]
    pivot = u1[np.argmax(np.abs(u1) > tol.bound())]
    u1 = u1 * (abs(pivot) / pivot)
    v1 = u1.conj() @ plain(0, 0)
    u = np.column_stack([plain(i, 0) @ v1.conj() for i in range(n)])
    v = np.vstack([u1.conj() @ plain(0, j) for j in range(n)])

    antilinear = transform.branch == Branch.ANTILINEAR
    form = SquareForm(SQUARE_FORMS[(transpose, antilinear)], u, v, 0.0)
    rng = make_rng(seed)
    residual = 0.0
    for _ in range(5):
        x = random_element(factor, rng)
        residual = max(residual, norm(Element(factor, image(x.data) - form.apply(x.data))) / norm(x))
    if not tol.accepts(residual):
        raise ClassificationError(f"no square form fits (residual {residual:.3e})")
    return SquareForm(form.form, u, v, float(residual))


# =============================================================================
# Preservation checker
# =============================================================================

VIOLATION_KINDS = (
    "order",
    "orthogonality",
    "orthogonality-reflection",
    "zero",
    "additivity",
    "supremum",
    "infimum",
    "extremality",
)


@dataclass(frozen=True)
class PreservationViolation:
    kind: str
    indices: tuple[int, ...]
    detail: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "indices": list(self.indices), "detail": self.detail}


@dataclass(frozen=True)
class PreservationReport:
    family_size: int
    pairs_checked: int
    orthogonal_pairs: int
    orthogonality_confirmed: int
    additivity_checked: int
    lattice_checked: int
    violations: tuple[PreservationViolation, ...] = ()
    observations: tuple[PreservationViolation, ...] = ()
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "family_size": self.family_size,
            "pairs_checked": self.pairs_checked,
            "orthogonal_pairs": self.orthogonal_pairs,
            "orthogonality_confirmed": self.orthogonality_confirmed,
            "additivity_checked": self.additivity_checked,
            "lattice_checked": self.lattice_checked,
            "violations": [v.to_dict() for v in self.violations],
            "observations": [v.to_dict() for v in self.observations],
        }


def _family_bound(order: np.ndarray, i: int, j: int, upper: bool) -> int | None:
    """Index of the least upper (greatest lower) bound of members i and j within the family."""
    relation = order if upper else order.T
    bounds = [k for k in range(len(relation)) if relation[i, k] and relation[j, k]]
    for k in bounds:
        if all(relation[k, m] for m in bounds):
            return k
    return None


def _find(family: Sequence[Element], x: Element, tol: Tolerance) -> int | None:
    for index, candidate in enumerate(family):
        if tol.accepts(norm(candidate - x), norm(x)):
            return index
    return None


def check_preservation(
    family: Sequence[Element],
    oracle: TripotentOracle,
    tol: Tolerance = DEFAULT_TOLERANCE,
    assume_orthogonality: bool = True,
    sums: Sequence[Sequence[int]] | None = None,
) -> PreservationReport:
    """Exhaustively compare order, orthogonality, sums and pairwise suprema and infima before and after Φ.

    Suprema and infima are compared twice: as least upper (greatest lower)
    bounds inside the family, and where tripotent_join or tripotent_meet
    settles the bound and it lies in the family.

    With ``assume_orthogonality=False`` failures of forward orthogonality
    preservation are recorded as observations rather than violations.
    ``sums`` lists orthogonal index tuples whose sum lies in the family;
    without it every orthogonal pair whose sum is listed is used.
    """
    images = [oracle(e) for e in family]
    violations: list[PreservationViolation] = []
    observations: list[PreservationViolation] = []
    size = len(family)

    zero_index = next((i for i, e in enumerate(family) if norm(e) <= tol.bound()), None)
    if zero_index is not None and norm(images[zero_index]) > tol.bound():
        violations.append(PreservationViolation("zero", (zero_index,), "Φ(0) is not zero"))

    pairs_checked = 0
    order_before = np.eye(size, dtype=bool)
    order_after = np.eye(size, dtype=bool)
    for i, j in itertools.permutations(range(size), 2):
        pairs_checked += 1
        before = leq_unchecked(family[i], family[j], tol)
        after = leq_unchecked(images[i], images[j], tol)
        order_before[i, j], order_after[i, j] = before, after
        if before != after:
            violations.append(
                PreservationViolation("order", (i, j), f"leq {before} before, {after} after")
            )

    orthogonal_pairs = confirmed = 0
    orthogonal: set[tuple[int, int]] = set()
    for i, j in itertools.combinations(range(size), 2):
        before = orthogonal_unchecked(family[i], family[j], tol)
        after = orthogonal_unchecked(images[i], images[j], tol)
        if before:
            orthogonal_pairs += 1
            orthogonal.add((i, j))
        if before and after:
            confirmed += 1
        elif before:
            finding = PreservationViolation("orthogonality", (i, j), "orthogonal pair mapped to non-orthogonal pair")
            (violations if assume_orthogonality else observations).append(finding)
        elif after:
            violations.append(
                PreservationViolation("orthogonality-reflection", (i, j), "non-orthogonal pair mapped to orthogonal pair")
            )

    if sums is None:
        tuples = []
        for i, j in sorted(orthogonal):
            if i == zero_index or j == zero_index:
                continue
            k = _find(family, family[i] + family[j], tol)
            if k is not None:
                tuples.append(((i, j), k))
    else:
        tuples = []
        for members in sums:
            total = family[members[0]]
            for index in members[1:]:
                total = total + family[index]
            k = _find(family, total, tol)
            if k is None:
                raise ShapeError(f"sum of {tuple(members)} is not in the family")
            tuples.append((tuple(members), k))

    for members, k in tuples:
        image_sum = images[members[0]]
        for index in members[1:]:
            image_sum = image_sum + images[index]
        drift = norm(image_sum - images[k])
        if not tol.accepts(drift, norm(images[k])):
            violations.append(
                PreservationViolation("additivity", tuple(members) + (k,), f"residual {drift:.3e}")
            )

    lattice_checked = 0
    for i, j in itertools.combinations(range(size), 2):
        for kind, upper, settle in (("supremum", True, tripotent_join), ("infimum", False, tripotent_meet)):
            before = _family_bound(order_before, i, j, upper)
            after = _family_bound(order_after, i, j, upper)
            if before != after:
                violations.append(
                    PreservationViolation(kind, (i, j), f"{kind} within the family is {before} before, {after} after")
                )
            bound = settle((family[i], family[j]), tol)
            k = None if bound is None else _find(family, bound, tol)
            if k is None:
                continue
            lattice_checked += 1
            image_bound = settle((images[i], images[j]), tol)
            if image_bound is None or not tol.accepts(norm(image_bound - images[k]), norm(images[k])):
                violations.append(
                    PreservationViolation(kind, (i, j, k), f"Φ({k}) is not the {kind} of Φ({i}) and Φ({j})")
                )

    for index, (e, image) in enumerate(zip(family, images)):
        if norm(e) <= tol.bound():
            continue
        before, after = classify(e, tol), classify(image, tol)
        if before.is_minimal != after.is_minimal or before.is_complete != after.is_complete:
            violations.append(
                PreservationViolation("extremality", (index,), f"{before.kind.value} -> {after.kind.value}")
            )

    counts = {kind: sum(1 for v in violations if v.kind == kind) for kind in VIOLATION_KINDS}
    logger.debug("preservation check on %d elements: %d violations", size, len(violations))
    return PreservationReport(
        family_size=size,
        pairs_checked=pairs_checked,
        orthogonal_pairs=orthogonal_pairs,
        orthogonality_confirmed=confirmed,
        additivity_checked=len(tuples),
        lattice_checked=lattice_checked,
        violations=tuple(violations),
        observations=tuple(observations),
        counts=counts,
    )
