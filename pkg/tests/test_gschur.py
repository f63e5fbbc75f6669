"""Tests for Weyl modules, idempotent ideals and generalized q-Schur quotients."""

import pytest

from src.algebra.cartan import SaturatedSet, Weight, WeightError, dominant_weights, saturate
from src.algebra.fields import Domain
from src.algebra.laurent import V
from src.schur.algebra import SchurAlgebra
from src.schur.frob import FrobeniusPair
from src.schur.gschur import (
    RealizabilityError,
    annihilator_check,
    cartan_image,
    descend_maps,
    filtration_check,
    ideal_generated,
    omega_weights,
    quotient,
    star_saturated,
    weyl_module,
)
from src.schur.theta import ThetaMatrix
from src.verify.suites import saturated_sets as all_saturated_sets

GENERIC = Domain.generic()


@pytest.fixture(scope="module")
def alg(table_2_2):
    return SchurAlgebra(table_2_2)


@pytest.fixture(scope="module")
def saturated_sets():
    """The three saturated sets seen by S(2, 2): everything, sat(2,0), nothing realizable."""
    return [
        SaturatedSet(2, frozenset()),
        saturate(Weight.of(2, 0), dominant_weights(2, 2)),
        SaturatedSet(2, frozenset(dominant_weights(2, 2))),
    ]


class TestWeylModules:
    """Test cases for Weyl modules."""

    def test_dimensions(self, alg):
        """Test dim 3 for (2, 0) and dim 1 for (1, 1)."""
        assert weyl_module(Weight.of(2, 0), alg, GENERIC).dim == 3
        assert weyl_module(Weight.of(1, 1), alg, GENERIC).dim == 1

    def test_multiplicities(self, alg):
        """Test the weight spaces of the three-dimensional module."""
        module = weyl_module(Weight.of(2, 0), alg, GENERIC)
        assert module.multiplicities == {(2, 0): 1, (1, 1): 1, (0, 2): 1}

    def test_highest_weight_vector(self, alg):
        """Test that 1_lambda survives in the quotient."""
        module = weyl_module(Weight.of(2, 0), alg, GENERIC)
        assert module.highest_weight_vector() == {ThetaMatrix.diagonal([2, 0]): GENERIC.field.one}

    def test_cyclotomic_dimensions(self, alg):
        """Test that Weyl module dimensions do not drop at a root of unity."""
        domain = Domain.cyclotomic(2)
        assert weyl_module(Weight.of(2, 0), alg, domain).dim == 3
        assert weyl_module(Weight.of(1, 1), alg, domain).dim == 1

    def test_errors(self, alg):
        """Test non-dominant and unrealizable highest weights."""
        with pytest.raises(WeightError):
            weyl_module(Weight.of(0, 2), alg, GENERIC)
        with pytest.raises(RealizabilityError):
            weyl_module(Weight.of(1, 0), alg, GENERIC)


class TestIdeals:
    """Test cases for I_P and the annihilator comparison."""

    def test_dimensions(self, alg, saturated_sets):
        """Test dim I_P for the three saturated sets."""
        everything, sat, nothing = saturated_sets
        assert ideal_generated(everything, alg, GENERIC).dim == 10
        assert ideal_generated(sat, alg, GENERIC).dim == 9
        assert ideal_generated(nothing, alg, GENERIC).dim == 0

    def test_unrealizable_complement(self, alg):
        """Test that P must contain the dominant weights S(2, 2) cannot see."""
        P = SaturatedSet(2, frozenset(dominant_weights(2, 4)))
        with pytest.raises(RealizabilityError):
            ideal_generated(P, alg, GENERIC)

    def test_annihilator_generic(self, alg, saturated_sets):
        """Test I_P = Ann of the Weyl modules outside P over Q(v)."""
        for P in saturated_sets:
            assert annihilator_check(P, alg, GENERIC)

    def test_annihilator_cyclotomic(self, alg, saturated_sets):
        """Test the containment form of the comparison in A_4."""
        for P in saturated_sets:
            assert annihilator_check(P, alg, Domain.cyclotomic(2))

    @pytest.mark.slow
    def test_degree_four(self, table_2_4):
        """Test dim I_P = 34 for the saturation of (3, 1) in S(2, 4)."""
        P = saturate(Weight.of(3, 1), dominant_weights(2, 4))
        assert ideal_generated(P, SchurAlgebra(table_2_4), GENERIC).dim == 34


class TestQuotients:
    """Test cases for U_P."""

    def test_dimensions(self, alg, saturated_sets):
        """Test dim U_P as the sum of squared Weyl dimensions."""
        everything, sat, nothing = saturated_sets
        assert quotient(everything, alg, GENERIC).dim == 0
        assert quotient(sat, alg, GENERIC).dim == 1
        assert quotient(nothing, alg, GENERIC).dim == 10

    def test_omega_and_identity(self, alg, saturated_sets):
        """Test that only 1_(1,1) survives modulo I_P for sat(2, 0)."""
        U = quotient(saturated_sets[1], alg, GENERIC)
        assert omega_weights(U) == [Weight.of(1, 1)]
        one = U.identity()
        assert one
        assert U.multiply(one, one) == one

    def test_cartan_image(self, alg, saturated_sets):
        """Test K_mu in U_P and the coweight check."""
        U = quotient(saturated_sets[1], alg, GENERIC)
        assert cartan_image(U, (1, -1)) == U.identity()
        with pytest.raises(WeightError):
            cartan_image(U, (1, 0))

    def test_cartan_image_full_quotient(self, alg, saturated_sets):
        """Test that K_mu multiplies 1_(2,0) by v^2 when nothing is killed."""
        U = quotient(saturated_sets[2], alg, GENERIC)
        image = cartan_image(U, (1, -1))
        v = GENERIC.coerce(V)
        assert image[ThetaMatrix.diagonal([2, 0])] == v * v
        assert image[ThetaMatrix.diagonal([1, 1])] == GENERIC.field.one


class TestDescent:
    """Test cases for Fr and c on the quotients."""

    def test_star_saturated(self, saturated_sets):
        """Test P* for the saturation of (2, 0) and ell = 2."""
        assert star_saturated(saturated_sets[1], 2, 1).complement == frozenset()
        assert star_saturated(saturated_sets[2], 2, 1).complement == frozenset({Weight.of(1, 0)})

    def test_descend_degree_two(self, table_2_2, table_2_1, saturated_sets):
        """Test descent of Fr and c along S(2, 2) -> S(2, 1)."""
        pair = FrobeniusPair.from_tables(table_2_2, table_2_1, 2)
        for P in saturated_sets[:2]:
            descent = descend_maps(pair, P)
            assert all(descent.report["checks"].values()), descent.report
        descent = descend_maps(pair, saturated_sets[1])
        assert descent.report["dims"] == {"S": 10, "I_P": 9, "U_P": 1}

    @pytest.mark.slow
    def test_descend_degree_four(self, table_2_4, table_2_2):
        """Test descent of Fr and c along S(2, 4) -> S(2, 2) for every saturated set."""
        pair = FrobeniusPair.from_tables(table_2_4, table_2_2, 2)
        sets = all_saturated_sets(2, 4)
        assert len(sets) == 4
        for P in sets:
            descent = descend_maps(pair, P)
            assert all(descent.report["checks"].values()), (P, descent.report)

    def test_filtration(self, table_2_2, table_2_1, saturated_sets):
        """Test compatibility with P inside P'."""
        pair = FrobeniusPair.from_tables(table_2_2, table_2_1, 2)
        result = filtration_check(pair, saturated_sets[1], saturated_sets[0])
        assert all(result.values()), result

    def test_filtration_order(self, table_2_2, table_2_1, saturated_sets):
        """Test that P must be contained in P'."""
        pair = FrobeniusPair.from_tables(table_2_2, table_2_1, 2)
        with pytest.raises(WeightError):
            filtration_check(pair, saturated_sets[0], saturated_sets[1])


if __name__ == "__main__":
    pytest.main([__file__])
