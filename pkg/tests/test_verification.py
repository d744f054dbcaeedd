"""
Tests for verification.py: extension checks, square forms and the preservation checker.
"""

import numpy as np
import pytest

from triplekit.cli.suites import violating_tables
from triplekit.engine import (
    Branch,
    ClassificationError,
    Element,
    OracleRecipe,
    RealLinearMap,
    TripotentOracle,
    check_preservation,
    classify_square_automorphism,
    direct_sum,
    grid_closure,
    make_oracle,
    recipe_map,
    rect,
    rectangular_grid,
    skew,
    spin,
    verify_extension,
)
from triplekit.engine.verification import VIOLATION_KINDS, canonical_tripotents


def _check_table(kind: str, **kwargs):
    table = violating_tables()[kind]
    return check_preservation([x for x, _ in table], TripotentOracle.from_table(table), **kwargs)


class TestCanonicalTripotents:
    def test_counts(self):
        """Test that canonical tripotents are counted per factor kind and summed over summands."""
        assert len(canonical_tripotents(rect(2, 3))) == 6
        assert len(canonical_tripotents(spin(5))) == 5
        assert len(canonical_tripotents(skew(4))) == 6
        assert len(canonical_tripotents(direct_sum(spin(3), rect(2, 2)))) == 7


class TestVerifyExtension:
    def test_ground_truth_passes(self):
        """Test that the recipe's own map passes on canonical and random tripotents."""
        factor = rect(2, 3)
        oracle = make_oracle(factor, OracleRecipe(kind="rect", seed=2))
        report = verify_extension(oracle.ground_truth, oracle, 30, seed=1)
        assert report.passes(1e-8)
        assert report.n_samples == 6 + 30

    def test_wrong_map_fails(self):
        """Test that the identity does not pass for a rotated spin oracle."""
        factor = spin(4)
        oracle = make_oracle(factor, OracleRecipe(kind="spin", seed=2))
        report = verify_extension(RealLinearMap.identity(factor), oracle, 10)
        assert not report.passes(1e-8)
        assert report.max_residual > 1e-3

    def test_seeded_runs_repeat(self):
        """Test that equal seeds give equal reports."""
        factor = spin(3)
        oracle = make_oracle(factor, OracleRecipe(kind="spin", seed=2))
        first = verify_extension(oracle.ground_truth, oracle, 15, seed=4).to_dict()
        second = verify_extension(oracle.ground_truth, oracle, 15, seed=4).to_dict()
        assert first == second


class TestSquareForms:
    @pytest.mark.parametrize(
        "transpose, conjugate, form",
        [(False, False, 1), (False, True, 2), (True, False, 3), (True, True, 4)],
    )
    def test_forms(self, transpose, conjugate, form, rng):
        """Test that each recipe map is classified with a unitary U and reproduces itself."""
        recipe = OracleRecipe(kind="rect", seed=31, transpose=transpose, conjugate=conjugate)
        transform = recipe_map(rect(3, 3), recipe)
        result = classify_square_automorphism(transform)
        assert result.form == form
        assert result.transpose == transpose
        assert result.antilinear == conjugate
        x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert np.allclose(result.apply(x), transform.apply(Element(rect(3, 3), x)).data)
        assert np.allclose(result.u @ result.u.conj().T, np.eye(3))

    def test_non_automorphism_rejected(self):
        """Test that a linear map with no square form is refused."""
        factor = rect(2, 2)
        # x -> trace(x) E_11 is linear but has no square form
        matrix = np.zeros((4, 4), dtype=complex)
        matrix[0, 0] = matrix[0, 3] = 1.0
        with pytest.raises(ClassificationError):
            classify_square_automorphism(RealLinearMap(factor, factor, matrix, Branch.LINEAR))


class TestCheckPreservation:
    """Order, orthogonality, additivity, lattice bounds and extremality on finite families."""

    @pytest.mark.parametrize("shape", [(2, 2), (3, 3)])
    def test_grid_closure_preserved(self, shape):
        """Test that an automorphism preserves every property on a grid closure."""
        factor = rect(*shape)
        family = [member.element for member in grid_closure(rectangular_grid(*shape))]
        oracle = make_oracle(factor, OracleRecipe(kind="rect", seed=3, transpose=True, conjugate=True))
        report = check_preservation(family, oracle)
        assert report.ok
        assert report.orthogonality_confirmed == report.orthogonal_pairs
        assert report.additivity_checked > 0
        assert report.lattice_checked > 0
        assert report.pairs_checked == len(family) * (len(family) - 1)

    @pytest.mark.parametrize("kind", ["order", "orthogonality", "additivity", "supremum"])
    def test_violating_tables(self, kind):
        """Test that each violating table is rejected under its own kind."""
        report = _check_table(kind)
        assert not report.ok
        assert kind in report.kinds()
        assert report.counts[kind] >= 1

    def test_orthogonality_only_table(self):
        """Test that the orthogonality table reports an orthogonality violation."""
        assert "orthogonality" in _check_table("orthogonality").kinds()

    def test_order_only_mode_records_observations(self):
        """Test that assume_orthogonality=False turns orthogonality failures into observations."""
        report = _check_table("orthogonality", assume_orthogonality=False)
        assert "orthogonality" not in report.kinds()
        assert any(o.kind == "orthogonality" for o in report.observations)

    def test_join_broken_while_order_survives(self):
        """Test that E11 + E22 sent to the identity is a supremum violation and not an order one."""
        report = _check_table("supremum")
        assert "order" not in report.kinds()
        assert any(v.kind == "supremum" and v.indices == (1, 2, 3) for v in report.violations)

    def test_order_reversal_breaks_both_bounds(self):
        """Test that swapping E11 and the identity moves both the supremum and the infimum."""
        kinds = _check_table("order").kinds()
        assert {"supremum", "infimum"} <= kinds

    def test_explicit_sums(self, matrix_unit):
        """Test that an explicit sums list is checked as given."""
        e11, e22 = matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)
        family = [e11, e22, e11 + e22]
        oracle = make_oracle(rect(2, 2), OracleRecipe(kind="rect", seed=5))
        report = check_preservation(family, oracle, sums=[(0, 1)])
        assert report.ok
        assert report.additivity_checked == 1
        assert report.lattice_checked > 0

    def test_report_serializes(self):
        """Test that the report dict carries ok, the lattice count and known violation kinds."""
        payload = _check_table("order").to_dict()
        assert payload["ok"] is False
        assert payload["lattice_checked"] >= 0
        assert payload["violations"][0]["kind"] in VIOLATION_KINDS
