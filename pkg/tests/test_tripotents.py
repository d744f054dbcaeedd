"""
Tests for tripotents.py: Peirce decomposition, order, orthogonality, rank
and the special configurations.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplekit.engine import (
    DegeneracyError,
    Element,
    NotATripotentError,
    PreconditionError,
    Tolerance,
    TripotentClass,
    classify,
    direct_sum,
    governs,
    herm,
    is_collinear,
    is_orthogonal,
    is_quadrangle,
    is_trangle,
    is_tripotent,
    leq,
    norm,
    orthogonal_sum,
    peirce,
    random_element,
    rect,
    scalar_multiple_below,
    skew,
    spin,
    triple_product,
    tripotent_join,
    tripotent_meet,
    zeros,
)
from triplekit.engine.sampling import random_tripotent
from triplekit.engine.tripotents import in_peirce_space

PEIRCE_FACTORS = [rect(2, 3), rect(3, 3), skew(4), herm(3), spin(4), direct_sum(spin(3), rect(2, 2))]


class TestIsTripotent:
    def test_matrix_unit(self, matrix_unit):
        """Test that a matrix unit is a tripotent."""
        assert is_tripotent(matrix_unit(2, 2, 0, 0))

    def test_scaled_matrix_unit_fails(self, matrix_unit):
        """Test that half a matrix unit is not a tripotent."""
        assert not is_tripotent(matrix_unit(2, 2, 0, 0, scale=0.5))

    def test_zero_is_tripotent(self):
        """Test that zero counts as a tripotent."""
        assert is_tripotent(zeros(spin(4)))

    def test_unimodular_multiple(self, matrix_unit):
        """Test that a unimodular multiple of a matrix unit is a tripotent."""
        assert is_tripotent(matrix_unit(2, 3, 1, 2, scale=np.exp(0.7j)))

    @pytest.mark.parametrize("factor", PEIRCE_FACTORS, ids=str)
    def test_random_tripotents(self, factor, rng):
        """Test that sampled tripotents pass is_tripotent in every factor kind."""
        for _ in range(5):
            assert is_tripotent(random_tripotent(factor, rng))


class TestPeirce:
    """Peirce decomposition through eigenprojections and closed forms."""

    def test_matrix_unit_dims(self, matrix_unit):
        """Test that E11 in rect(2,2) has Peirce dimensions (1, 2, 1)."""
        data = peirce(matrix_unit(2, 2, 0, 0))
        # E_2 = span{E11}, E_1 = span{E12, E21}, E_0 = span{E22}
        assert data.dims == (1, 2, 1)

    def test_identity_is_all_peirce_two(self):
        """Test that a unitary has everything in its Peirce 2-space."""
        data = peirce(rect(3, 3).unit())
        assert data.dims == (9, 0, 0)

    def test_spin_maximal_dims(self):
        """Test that a maximal spin tripotent has everything in its Peirce 2-space."""
        data = peirce(spin(5).unit())
        assert data.dims == (5, 0, 0)

    def test_spin_minimal_dims(self, spin4_states):
        """Test that P_z+ has Peirce dimensions (1, 2, 1)."""
        data = peirce(spin4_states["p_zplus"])
        assert data.dims == (1, 2, 1)

    @pytest.mark.parametrize("factor", PEIRCE_FACTORS, ids=str)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=10, deadline=None)
    def test_closure_and_closed_forms(self, factor, seed):
        """Test that the projections sum to the identity and agree with the closed forms."""
        rng = np.random.default_rng(seed)
        e = random_tripotent(factor, rng)
        data = peirce(e)
        x = random_element(factor, rng)
        p2, p1, p0 = data.decompose(x)
        assert norm(p2 + p1 + p0 - x) <= 1e-10 * norm(x)
        assert data.closed_form_residual(x) <= 1e-9 * norm(x)
        assert sum(data.dims) == factor.complex_dim

    @pytest.mark.parametrize("factor", PEIRCE_FACTORS, ids=str)
    def test_peirce_arithmetic(self, factor, rng):
        """Test that {E_2, E_0, E} vanishes."""
        e = random_tripotent(factor, rng)
        data = peirce(e)
        x, y, z = (random_element(factor, rng) for _ in range(3))
        # {E_2, E_0, E} = 0
        product = triple_product(data.project(2, y), data.project(0, z), x)
        assert norm(product) <= 1e-9 * norm(x) * norm(y) * norm(z)

    def test_projections_land_in_their_spaces(self, rng):
        """Test that each projection lands in its Peirce space."""
        e = random_tripotent(rect(3, 4), rng, rank=2)
        data = peirce(e)
        x = random_element(rect(3, 4), rng)
        for k in (2, 1, 0):
            assert in_peirce_space(e, k, data.project(k, x))

    def test_non_tripotent_rejected(self, matrix_unit):
        """Test that Peirce data is refused for a non-tripotent."""
        with pytest.raises(NotATripotentError):
            peirce(matrix_unit(2, 2, 0, 0, scale=0.5))

    def test_degenerate_spectrum_rejected(self, matrix_unit):
        """Test that an eigenvalue off {0, 1/2, 1} is a degeneracy error."""
        # a loose tolerance accepts the scaled unit, but L(e,e) has eigenvalue 0.9
        loose = Tolerance(abs=1.0, rel=1.0)
        with pytest.raises(DegeneracyError):
            peirce(matrix_unit(2, 2, 0, 0, scale=np.sqrt(0.9)), loose)


class TestOrderAndOrthogonality:
    def test_diagonal_units_orthogonal(self, matrix_unit):
        """Test that E11 and E22 are orthogonal."""
        assert is_orthogonal(matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1))

    def test_same_row_not_orthogonal(self, matrix_unit):
        """Test that units sharing a row are not orthogonal."""
        assert not is_orthogonal(matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 1))

    def test_leq_below_identity(self, matrix_unit):
        """Test that E11 lies below the identity and not the other way round."""
        identity = rect(2, 2).unit()
        assert leq(matrix_unit(2, 2, 0, 0), identity)
        assert not leq(identity, matrix_unit(2, 2, 0, 0))

    def test_zero_below_everything(self, matrix_unit):
        """Test that zero lies below any tripotent."""
        assert leq(zeros(rect(2, 2)), matrix_unit(2, 2, 1, 0))

    def test_spin_state_below_identity(self, spin4_states):
        """Test that P_z+ lies below e_0 and is orthogonal to P_z-."""
        assert leq(spin4_states["p_zplus"], spin4_states["e0"])
        assert is_orthogonal(spin4_states["p_zplus"], spin4_states["p_zminus"])

    def test_non_tripotent_input(self, matrix_unit):
        """Test that leq refuses a non-tripotent."""
        with pytest.raises(NotATripotentError):
            leq(matrix_unit(2, 2, 0, 0, scale=2.0), rect(2, 2).unit())


class TestClassify:
    def test_zero(self):
        """Test that zero classifies as zero."""
        assert classify(zeros(rect(2, 3))).kind == TripotentClass.ZERO

    def test_minimal(self, matrix_unit):
        """Test that a matrix unit is minimal of rank 1."""
        info = classify(matrix_unit(2, 3, 0, 1))
        assert info.kind == TripotentClass.MINIMAL
        assert info.rank == 1

    def test_complete_non_unitary(self):
        """Test that the unit of rect(2,3) is complete but not unitary."""
        info = classify(rect(2, 3).unit())
        assert info.kind == TripotentClass.COMPLETE
        assert info.rank == 2
        assert info.is_complete

    def test_unitary(self):
        """Test that the identity of rect(3,3) is unitary."""
        info = classify(rect(3, 3).unit())
        assert info.kind == TripotentClass.UNITARY
        assert info.is_complete

    def test_intermediate(self, matrix_unit):
        """Test that E11 + E22 in rect(3,3) is intermediate of rank 2."""
        info = classify(matrix_unit(3, 3, 0, 0) + matrix_unit(3, 3, 1, 1))
        assert info.kind == TripotentClass.INTERMEDIATE
        assert info.rank == 2

    def test_skew_rank_is_halved(self):
        """Test that skew ranks count pairs of singular values."""
        info = classify(skew(5).unit())
        assert info.rank == 2
        assert info.kind == TripotentClass.COMPLETE

    def test_spin_ranks(self, spin4_states):
        """Test that spin states have rank 1 and e_0 rank 2."""
        assert classify(spin4_states["p_zplus"]).rank == 1
        assert classify(spin4_states["e0"]).rank == 2
        assert classify(spin4_states["e0"]).kind == TripotentClass.UNITARY

    def test_sum_rank_adds(self):
        """Test that ranks add over direct summands."""
        factor = direct_sum(spin(3), rect(2, 2))
        assert classify(factor.unit()).rank == 4


class TestConfigurations:
    """Collinear, governing, quadrangle and trangle configurations."""

    def test_collinear_units(self, matrix_unit):
        """Test that units sharing a row are collinear and diagonal ones are not."""
        assert is_collinear(matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 1))
        assert not is_collinear(matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1))

    def test_quadrangle(self, matrix_unit):
        """Test that the four units of rect(2,2) form a quadrangle in order."""
        e11, e12, e22, e21 = (matrix_unit(2, 2, i, j) for i, j in ((0, 0), (0, 1), (1, 1), (1, 0)))
        assert is_quadrangle(e11, e12, e22, e21)
        assert not is_quadrangle(e11, e12, e22, -e21)

    def test_trangle(self, matrix_unit):
        """Test that E11, the flip and E22 form a trangle."""
        e11, e22 = matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)
        u = Element(rect(2, 2), [[0, 1], [1, 0]])
        assert governs(u, e11)
        assert is_trangle(e11, u, e22)

    def test_trangle_needs_orthogonal_ends(self, matrix_unit):
        """Test that a trangle needs orthogonal ends."""
        e11 = matrix_unit(2, 2, 0, 0)
        u = Element(rect(2, 2), [[0, 1], [1, 0]])
        assert not is_trangle(e11, u, e11)


class TestScalarMultipleBelow:
    def test_phase_recovered(self, matrix_unit):
        """Test that the scalar taking i E11 below the identity is -i."""
        gamma = scalar_multiple_below(rect(2, 2).unit(), matrix_unit(2, 2, 0, 0, scale=1j))
        assert gamma == pytest.approx(-1j)

    def test_no_multiple(self, matrix_unit):
        """Test that no scalar multiple of E12 lies below E11."""
        assert scalar_multiple_below(matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 1)) is None

    def test_zero_rejected(self, matrix_unit):
        """Test that the zero tripotent is refused."""
        with pytest.raises(PreconditionError):
            scalar_multiple_below(zeros(rect(2, 2)), matrix_unit(2, 2, 0, 0))


class TestOrthogonalSum:
    def test_sum_is_tripotent(self, matrix_unit):
        """Test that a sum of orthogonal units is a unitary tripotent."""
        total = orthogonal_sum([matrix_unit(3, 3, 0, 1), matrix_unit(3, 3, 1, 2), matrix_unit(3, 3, 2, 0)])
        assert is_tripotent(total)
        assert classify(total).kind == TripotentClass.UNITARY

    def test_non_orthogonal_rejected(self, matrix_unit):
        """Test that non-orthogonal summands are refused."""
        with pytest.raises(PreconditionError):
            orthogonal_sum([matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 1)])

    def test_empty_rejected(self):
        """Test that an empty family is refused."""
        with pytest.raises(PreconditionError):
            orthogonal_sum([])


class TestJoinAndMeet:
    """Suprema and infima the tripotent order settles."""

    def test_join_of_orthogonal_units(self, matrix_unit):
        """Test that the join of E11 and E22 is their sum."""
        joined = tripotent_join([matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)])
        assert norm(joined - (matrix_unit(2, 2, 0, 0) + matrix_unit(2, 2, 1, 1))) <= 1e-12

    def test_join_of_chain_is_top(self, matrix_unit):
        """Test that the join of E11 <= E11 + E22 is the larger one."""
        e11 = matrix_unit(2, 2, 0, 0)
        identity = e11 + matrix_unit(2, 2, 1, 1)
        assert norm(tripotent_join([e11, identity]) - identity) <= 1e-12
        assert norm(tripotent_meet([e11, identity]) - e11) <= 1e-12

    def test_zero_is_ignored_by_join(self, matrix_unit):
        """Test that joining with zero returns the other tripotent."""
        e12 = matrix_unit(2, 3, 0, 1)
        assert norm(tripotent_join([zeros(rect(2, 3)), e12]) - e12) <= 1e-12

    def test_meet_of_orthogonal_units_is_zero(self, matrix_unit):
        """Test that orthogonal tripotents meet at zero."""
        assert tripotent_meet([matrix_unit(3, 3, 0, 0), matrix_unit(3, 3, 1, 2)]).is_zero()

    def test_spin_states(self, spin4_states):
        """Test that P_z+ and P_z- join to e_0 and meet at zero."""
        pair = [spin4_states["p_zplus"], spin4_states["p_zminus"]]
        assert norm(tripotent_join(pair) - spin4_states["e0"]) <= 1e-12
        assert tripotent_meet(pair).is_zero()

    def test_unsettled_pair(self, matrix_unit):
        """Test that E11 and E12, neither comparable nor orthogonal, settle nothing."""
        pair = [matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 1)]
        assert tripotent_join(pair) is None
        assert tripotent_meet(pair) is None

    @pytest.mark.parametrize("operation", [tripotent_join, tripotent_meet])
    def test_empty_rejected(self, operation):
        """Test that an empty family is refused."""
        with pytest.raises(PreconditionError):
            operation([])

    @pytest.mark.parametrize("operation", [tripotent_join, tripotent_meet])
    def test_non_tripotent_rejected(self, operation, matrix_unit):
        """Test that a non-tripotent member is refused."""
        with pytest.raises(NotATripotentError):
            operation([matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1, scale=0.5)])
