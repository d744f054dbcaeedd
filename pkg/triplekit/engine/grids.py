"""
Rectangular grids: the matrix-unit frame of rect(m, n), axiom verification,
linear extension of grid correspondences, and finite closure families.

Cells are indexed (i, j) from 0.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, ShapeError
from .factors import Element, FactorDescriptor, norm, rect, stack_coords, triple_product, zeros
from .maps import Branch, RealLinearMap
from .tolerance import DEFAULT_TOLERANCE, Tolerance
from .tripotents import is_tripotent

logger = logging.getLogger(__name__)

# Triples of cells checked for the vanishing axiom before switching to a strided sample
MAX_VANISHING_TRIPLES = 2000

AXIOM_LABELS = {"collinearity": "(i)", "quadrangle": "(ii)", "vanishing": "(iii)", "tripotent": "(cells)"}


@dataclass(frozen=True, eq=False)
class RectGrid:
    """m x n cells u_ij, stored row-major."""

    m: int
    n: int
    cells: tuple[tuple[Element, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        if len(cells) != self.m or any(len(row) != self.n for row in cells):
            raise ShapeError(f"grid needs {self.m} x {self.n} cells")
        factors = {cell.factor for row in cells for cell in row}
        if len(factors) != 1:
            raise ShapeError("all grid cells must live in one factor")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[Element]]) -> RectGrid:
        rows = [list(row) for row in cells]
        return cls(len(rows), len(rows[0]) if rows else 0, tuple(tuple(row) for row in rows))

    @property
    def factor(self) -> FactorDescriptor:
        return self.cells[0][0].factor

    def cell(self, i: int, j: int) -> Element:
        return self.cells[i][j]

    def items(self) -> Iterator[tuple[tuple[int, int], Element]]:
        for i, row in enumerate(self.cells):
            for j, cell in enumerate(row):
                yield (i, j), cell

    def with_cell(self, i: int, j: int, value: Element) -> RectGrid:
        rows = [list(row) for row in self.cells]
        rows[i][j] = value
        return RectGrid.from_cells(rows)

    def map_cells(self, fn) -> RectGrid:
        return RectGrid.from_cells([[fn(cell) for cell in row] for row in self.cells])


def rectangular_grid(m: int, n: int) -> RectGrid:
    """The matrix units E_ij of rect(m, n)."""
    factor = rect(m, n)
    rows = []
    for i in range(m):
        row = []
        for j in range(n):
            data = np.zeros((m, n), dtype=complex)
            data[i, j] = 1.0
            row.append(Element(factor, data))
        rows.append(row)
    return RectGrid.from_cells(rows)


@dataclass(frozen=True)
class GridViolation:
    axiom: str
    indices: tuple[int, ...]
    residual: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "indices": list(self.indices),
            "residual": self.residual,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class GridReport:
    violations: tuple[GridViolation, ...] = ()
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_axiom(self, axiom: str) -> list[GridViolation]:
        return [v for v in self.violations if v.axiom == axiom]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(self.checked),
            "violations": [v.to_dict() for v in self.violations],
        }


def _collinear_residual(p: Element, q: Element) -> float:
    return max(
        norm(triple_product(q, q, p) - 0.5 * p),
        norm(triple_product(p, p, q) - 0.5 * q),
    )


def _orthogonal_residual(p: Element, q: Element) -> float:
    return max(norm(triple_product(p, p, q)), norm(triple_product(q, q, p)))


def _allowed_nonzero(a: tuple[int, int], b: tuple[int, int], c: tuple[int, int]) -> bool:
    # b shares a row with one outer cell and a column with the other; covers {u,u,v} for collinear u, v
    return (b[0] == a[0] and b[1] == c[1]) or (b[1] == a[1] and b[0] == c[0])


def _vanishing_triples(indices: list[tuple[int, int]]) -> Iterator[tuple]:
    total = len(indices) ** 3
    triples = itertools.product(indices, repeat=3)
    if total <= MAX_VANISHING_TRIPLES:
        yield from triples
        return
    stride = -(-total // MAX_VANISHING_TRIPLES)
    yield from itertools.islice(triples, 0, None, stride)


def verify_rectangular_grid(grid: RectGrid, tol: Tolerance = DEFAULT_TOLERANCE) -> GridReport:
    """Check the three grid axioms and report every failure.

    (i) cells sharing a row or column are collinear, all others orthogonal;
    (ii) u_ik = 2{u_jk, u_jl, u_il} for j != i, l != k;
    (iii) other triple products of cells vanish (sampled on large grids).
    """
    violations: list[GridViolation] = []
    checked = {"tripotent": 0, "collinearity": 0, "quadrangle": 0, "vanishing": 0}
    indices = [idx for idx, _ in grid.items()]
    limit = tol.bound(1.0)

    for idx, cell in grid.items():
        checked["tripotent"] += 1
        if not is_tripotent(cell, tol):
            residual = norm(triple_product(cell, cell, cell) - cell)
            violations.append(GridViolation("tripotent", idx, residual))
    if violations:
        return GridReport(tuple(violations), checked)

    for p_idx, q_idx in itertools.combinations(indices, 2):
        p, q = grid.cell(*p_idx), grid.cell(*q_idx)
        checked["collinearity"] += 1
        if p_idx[0] == q_idx[0] or p_idx[1] == q_idx[1]:
            residual = _collinear_residual(p, q)
            detail = "expected collinear"
        else:
            residual = _orthogonal_residual(p, q)
            detail = "expected orthogonal"
        if residual > limit:
            violations.append(GridViolation("collinearity", p_idx + q_idx, residual, detail))

    for i, j in itertools.permutations(range(grid.m), 2):
        for k, l in itertools.permutations(range(grid.n), 2):
            checked["quadrangle"] += 1
            closing = 2.0 * triple_product(grid.cell(j, k), grid.cell(j, l), grid.cell(i, l))
            residual = norm(closing - grid.cell(i, k))
            if residual > limit:
                violations.append(
                    GridViolation("quadrangle", (i, k), residual, f"via row {j}, column {l}")
                )

    for a, b, c in _vanishing_triples(indices):
        if _allowed_nonzero(a, b, c):
            continue
        checked["vanishing"] += 1
        residual = norm(triple_product(grid.cell(*a), grid.cell(*b), grid.cell(*c)))
        if residual > limit:
            violations.append(GridViolation("vanishing", a + b + c, residual))

    logger.debug("grid %dx%d: %d violations", grid.m, grid.n, len(violations))
    return GridReport(tuple(violations), checked)


def grid_linear_extension(
    source: RectGrid,
    images: RectGrid,
    branch: Branch = Branch.LINEAR,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> RealLinearMap:
    """The map sum x_ij u_ij -> sum g(x_ij) images_ij, g = id or conjugation.

    Raises:
        PreconditionError: If ``images`` fails the grid axioms.
    """
    if (images.m, images.n) != (source.m, source.n):
        raise ShapeError(f"image grid is {images.m}x{images.n}, source is {source.m}x{source.n}")
    report = verify_rectangular_grid(images, tol)
    if not report.ok:
        first = report.violations[0]
        raise PreconditionError(
            f"image cells are not a rectangular grid ({first.axiom} at {first.indices})"
        )
    cells = stack_coords(cell for _, cell in source.items())
    targets = stack_coords(cell for _, cell in images.items())
    branch = Branch(branch)
    adjoint = cells.T if branch == Branch.ANTILINEAR else cells.conj().T
    return RealLinearMap(source.factor, images.factor, targets @ adjoint, branch)


@dataclass(frozen=True, eq=False)
class ClosureMember:
    """A sum of mutually orthogonal grid cells."""

    cells: tuple[tuple[int, int], ...]
    element: Element


def grid_closure(grid: RectGrid) -> tuple[ClosureMember, ...]:
    """{0} together with every partial-permutation sum of cells."""
    members = [ClosureMember((), zeros(grid.factor))]
    for size in range(1, min(grid.m, grid.n) + 1):
        for rows in itertools.combinations(range(grid.m), size):
            for cols in itertools.permutations(range(grid.n), size):
                chosen = tuple(zip(rows, cols))
                total = grid.cell(*chosen[0])
                for idx in chosen[1:]:
                    total = total + grid.cell(*idx)
                members.append(ClosureMember(chosen, total))
    return tuple(members)
