"""
Tests for reconstruction.py: spin, rectangular and atomic reconstruction,
spin model targets and table-backed oracles.
"""

import numpy as np
import pytest

from triplekit.engine import (
    Branch,
    Element,
    OracleLookupError,
    OracleRecipe,
    PreconditionError,
    RoutingError,
    StructureError,
    TripotentOracle,
    direct_sum,
    herm,
    make_oracle,
    matrix_rep,
    oracle_table,
    reconstruct,
    reconstruct_atomic,
    reconstruct_rectangular,
    reconstruct_spin,
    reconstruction_queries,
    rect,
    route_components,
    skew,
    spin,
    spin_model,
)
from triplekit.engine.grids import rectangular_grid

THRESHOLD = 1e-8

ATOMIC_FACTOR = direct_sum(spin(3), rect(2, 2), spin(4))
ATOMIC_RECIPE = OracleRecipe(
    kind="sum",
    seed=17,
    permutation=[2, 1, 0],
    components=[
        OracleRecipe(kind="spin", phase=(0.0, 1.0)),
        OracleRecipe(kind="rect", conjugate=True),
        OracleRecipe(kind="spin"),
    ],
)


class TestReconstructSpin:
    @pytest.mark.parametrize("dim", [3, 4, 5, 6])
    @pytest.mark.parametrize("conjugate", [False, True])
    def test_round_trip(self, dim, conjugate):
        """Test that a phased spin automorphism is rebuilt with the right branch."""
        recipe = OracleRecipe(kind="spin", phase=(np.cos(np.pi / 5), np.sin(np.pi / 5)), seed=11, conjugate=conjugate)
        oracle = make_oracle(spin(dim), recipe)
        report = reconstruct_spin(oracle, n_samples=40, seed=0)
        assert report.max_residual <= THRESHOLD
        assert report.extension.passes(THRESHOLD)
        assert report.branch == recipe.branch
        assert set(report.checks) == {"imaginary", "gram", "minimal_formula"}

    def test_phase_is_recovered(self):
        """Test that λ0 equals the recipe phase."""
        recipe = OracleRecipe(kind="spin", phase=(np.cos(np.pi / 5), np.sin(np.pi / 5)))
        report = reconstruct_spin(make_oracle(spin(4), recipe), n_samples=10)
        assert report.lambda0 == pytest.approx(np.exp(1j * np.pi / 5))

    def test_rect22_target(self):
        """Test that an oracle into rect(2,2) is read through the 2x2 model."""
        factor = spin(4)
        base = make_oracle(factor, OracleRecipe(kind="spin", seed=6))
        target = rect(2, 2)
        oracle = base.composed(lambda e: Element(target, matrix_rep(e)), target)
        report = reconstruct_spin(oracle, n_samples=20)
        assert report.target == target
        assert report.max_residual <= THRESHOLD

    @pytest.mark.parametrize("dim, target", [(3, herm(2)), (6, skew(4))])
    @pytest.mark.parametrize("conjugate", [False, True])
    def test_spin_model_targets(self, dim, target, conjugate):
        """Test that oracles into herm(2) and skew(4) are reconstructed through their spin models."""
        recipe = OracleRecipe(kind="spin", phase=(0.0, 1.0), seed=4, conjugate=conjugate)
        base = make_oracle(spin(dim), recipe)
        oracle = base.composed(spin_model(dim, target).apply, target)
        report = reconstruct_spin(oracle, n_samples=20)
        assert report.target == target
        assert report.branch == recipe.branch
        assert report.max_residual <= THRESHOLD

    def test_spin_model_target_dispatch(self):
        """Test that reconstruct routes a spin(6) -> skew(4) oracle to the spin path."""
        oracle = make_oracle(spin(6), OracleRecipe(kind="spin", seed=9)).composed(spin_model(6, skew(4)).apply, skew(4))
        assert reconstruct(oracle, n_samples=5).max_residual <= THRESHOLD

    def test_target_of_wrong_dimension(self):
        """Test that herm(2) is refused as a target for spin(5)."""
        base = make_oracle(spin(5), OracleRecipe(kind="spin"))
        oracle = base.composed(lambda e: herm(2).unit(), herm(2))
        with pytest.raises(StructureError, match="not a spin factor of dimension 5"):
            reconstruct_spin(oracle)

    def test_minimal_anchor_fails(self):
        """Test that an oracle sending e_0 to a minimal tripotent is rejected."""
        factor = spin(3)
        # sends every tripotent to a fixed minimal one
        fixed = Element(factor, [0.5, 0.5j, 0])
        oracle = TripotentOracle(factor, factor, lambda e: fixed)
        with pytest.raises(StructureError, match="maximal"):
            reconstruct_spin(oracle)

    def test_non_spin_source(self):
        """Test that reconstruct_spin refuses a rect source."""
        with pytest.raises(PreconditionError):
            reconstruct_spin(make_oracle(rect(2, 2), OracleRecipe()))


class TestReconstructRectangular:
    @pytest.mark.parametrize("shape", [(2, 2), (2, 3), (3, 3), (3, 4)])
    @pytest.mark.parametrize("conjugate", [False, True])
    def test_round_trip(self, shape, conjugate):
        """Test that a rect automorphism is rebuilt from its grid images."""
        factor = rect(*shape)
        recipe = OracleRecipe(kind="rect", seed=21, phase=(0.0, 1.0), conjugate=conjugate)
        report = reconstruct_rectangular(make_oracle(factor, recipe), n_samples=40)
        assert report.max_residual <= THRESHOLD
        assert report.branch == recipe.branch

    @pytest.mark.parametrize(
        "transpose, conjugate, form",
        [(False, False, 1), (False, True, 2), (True, False, 3), (True, True, 4)],
    )
    def test_square_forms(self, transpose, conjugate, form):
        """Test that each square recipe is classified as its form."""
        recipe = OracleRecipe(kind="rect", seed=13, transpose=transpose, conjugate=conjugate)
        report = reconstruct_rectangular(make_oracle(rect(3, 3), recipe), n_samples=20)
        assert report.square_form == form
        assert report.to_dict()["square_form"] == form

    def test_non_square_has_no_form(self):
        """Test that non-square factors report no square form."""
        report = reconstruct_rectangular(make_oracle(rect(2, 3), OracleRecipe(kind="rect", seed=1)), n_samples=5)
        assert report.square_form is None

    def test_grid_violation_named(self, matrix_unit):
        """Test that a table breaking the quadrangle axiom names axiom (ii)."""
        grid = rectangular_grid(2, 3)
        pairs = [(cell, cell) for _, cell in grid.items()]
        # send E_12 to -E_12: still a bijection of tripotents, but not a grid
        pairs[1] = (pairs[1][0], -pairs[1][0])
        oracle = TripotentOracle.from_table(pairs)
        with pytest.raises(StructureError, match=r"grid axiom \(ii\) violated"):
            reconstruct_rectangular(oracle, n_samples=0)

    def test_rank_one_rejected(self):
        """Test that rect(1,3) has no rectangular route."""
        with pytest.raises(PreconditionError):
            reconstruct_rectangular(make_oracle(rect(1, 3), OracleRecipe(kind="rect")))


class TestReconstructAtomic:
    """Routing and block reconstruction on finite direct sums."""

    def test_routing(self):
        """Test that routing recovers the recipe permutation."""
        oracle = make_oracle(ATOMIC_FACTOR, ATOMIC_RECIPE)
        assert route_components(oracle) == (2, 1, 0)

    def test_mixed_branches(self):
        """Test that each block keeps its own branch and the sum reports mixed."""
        report = reconstruct_atomic(make_oracle(ATOMIC_FACTOR, ATOMIC_RECIPE), n_samples=20)
        assert report.routing == (2, 1, 0)
        assert report.branches == (Branch.LINEAR, Branch.ANTILINEAR, Branch.LINEAR)
        assert report.branch == Branch.MIXED
        assert report.max_residual <= THRESHOLD
        assert all(block.max_residual <= THRESHOLD for block in report.blocks)

    def test_dispatch(self):
        """Test that reconstruct dispatches sums to the atomic route."""
        report = reconstruct(make_oracle(ATOMIC_FACTOR, ATOMIC_RECIPE), n_samples=5)
        assert report.to_dict()["routing"] == [2, 1, 0]

    def test_spread_image_is_routing_error(self):
        """Test that an image spread over two summands is a routing error."""
        factor = direct_sum(spin(3), spin(3))

        def spread(e: Element) -> Element:
            first, second = e.components
            if first.is_zero():
                return e
            # a maximal tripotent of summand 0 lands in both summands
            return Element(factor, (first, first))

        oracle = TripotentOracle(factor, factor, spread)
        with pytest.raises(RoutingError):
            route_components(oracle)

    def test_unsupported_summand(self):
        """Test that a herm summand blocks atomic reconstruction."""
        factor = direct_sum(spin(3), herm(2))
        with pytest.raises(PreconditionError):
            reconstruct_atomic(make_oracle(factor, OracleRecipe()))

    def test_unsupported_kind(self):
        """Test that reconstruct has no route for herm sources."""
        with pytest.raises(PreconditionError):
            reconstruct(make_oracle(herm(2), OracleRecipe()))


class TestOracleTables:
    """Finite tables holding exactly what reconstruction asks the oracle."""

    @pytest.mark.parametrize(
        "factor, count",
        [(spin(4), 7), (rect(2, 3), 7), (direct_sum(spin(3), rect(2, 2)), 12)],
    )
    def test_query_counts(self, factor, count):
        """Test that the query list has canonical tripotents plus the phase entries, without duplicates."""
        assert len(reconstruction_queries(factor)) == count

    def test_spin_queries_include_phase_entries(self):
        """Test that spin queries hold i e_0, i e_1 and 1/2(e_0 + i e_1)."""
        queries = [tuple(q.data) for q in reconstruction_queries(spin(3))]
        assert (1j, 0, 0) in queries
        assert (0, 1j, 0) in queries
        assert (0.5, 0.5j, 0) in queries

    def test_queries_are_tripotents(self):
        """Test that every listed query is a tripotent, so a table can hold it."""
        from triplekit.engine import is_tripotent

        assert all(is_tripotent(q) for q in reconstruction_queries(ATOMIC_FACTOR))

    def test_no_route_has_no_queries(self):
        """Test that herm factors have no query list."""
        with pytest.raises(PreconditionError):
            reconstruction_queries(herm(3))

    @pytest.mark.parametrize(
        "factor, recipe, branch",
        [
            (
                spin(4),
                OracleRecipe(kind="spin", phase=(np.cos(0.7), np.sin(0.7)), seed=2, conjugate=True),
                Branch.ANTILINEAR,
            ),
            (spin(5), OracleRecipe(kind="spin", seed=8), Branch.LINEAR),
            (rect(3, 3), OracleRecipe(kind="rect", seed=5, transpose=True), Branch.LINEAR),
            (rect(2, 3), OracleRecipe(kind="rect", seed=3, conjugate=True), Branch.ANTILINEAR),
            (ATOMIC_FACTOR, ATOMIC_RECIPE, Branch.MIXED),
        ],
    )
    def test_table_backed_round_trip(self, factor, recipe, branch):
        """Test that a table built from oracle_table reconstructs the recipe map."""
        table = TripotentOracle.from_table(oracle_table(make_oracle(factor, recipe)))
        report = reconstruct(table, n_samples=0)
        assert report.max_residual <= THRESHOLD
        assert report.branch == branch

    def test_missing_phase_entry(self):
        """Test that a table without i e_0 fails with a lookup error."""
        pairs = oracle_table(make_oracle(spin(4), OracleRecipe(kind="spin", seed=2)))
        pairs = [(x, y) for x, y in pairs if not np.allclose(x.data, [1j, 0, 0, 0])]
        with pytest.raises(OracleLookupError):
            reconstruct(TripotentOracle.from_table(pairs), n_samples=0)
