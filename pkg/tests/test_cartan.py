"""Tests for Cartan data, weights and saturated sets."""

import pytest

from src.algebra.cartan import (
    CartanDatum,
    CartanDatumError,
    SaturatedSet,
    Weight,
    WeightError,
    compositions,
    divide_weight,
    dominance_leq,
    dominant_weights,
    in_Xstar,
    l_factor,
    realizable_weights,
    saturate,
    simple_root,
    star_datum,
    weyl_reflect,
)


class TestCartanDatum:
    """Test cases for Cartan data and the modified datum."""

    def test_type_a(self):
        """Test the type A chain pairing."""
        datum = CartanDatum.type_a(2)
        assert datum.pairing == ((2, -1), (-1, 2))
        assert datum.rank == 2
        assert datum.cartan_entry(1, 2) == -1

    def test_positive_off_diagonal_rejected(self):
        """Test that a positive off-diagonal pairing is rejected."""
        with pytest.raises(CartanDatumError):
            CartanDatum.from_matrix([[2, 1], [1, 2]])

    def test_non_symmetric_rejected(self):
        """Test that a non-symmetric pairing is rejected."""
        with pytest.raises(CartanDatumError, match="symmetric"):
            CartanDatum.from_matrix([[2, -1], [0, 2]])

    def test_odd_diagonal_rejected(self):
        """Test that i.i must be a positive even integer."""
        with pytest.raises(CartanDatumError):
            CartanDatum.from_matrix([[3]])

    def test_star_datum(self):
        """Test the modified pairing in rank one and rank two."""
        assert star_datum(CartanDatum.type_a(1), 2).pairing == ((8,),)
        assert star_datum(CartanDatum.type_a(2), 3).pairing == ((18, -9), (-9, 18))

    def test_l_factor(self):
        """Test l_i for a long root."""
        datum = CartanDatum.from_matrix([[4, -2], [-2, 2]])
        assert l_factor(datum, 1, 4) == 2
        assert l_factor(datum, 2, 4) == 4


class TestWeight:
    """Test cases for type A weights."""

    def test_canonical_representative(self):
        """Test that weights differing by (1, ..., 1) are equal."""
        assert Weight.of(3, 1) == Weight.of(2, 0)
        assert Weight.of((1, 1)).coords == (0, 0)
        assert Weight.of(-1, 2) == Weight.of(0, 3)

    def test_too_short(self):
        """Test that a single coordinate is rejected."""
        with pytest.raises(WeightError):
            Weight.of(1)

    def test_lift(self):
        """Test lifts to a given entry sum."""
        assert Weight.of(2, 0).lift(4) == (3, 1)
        assert Weight.of(2, 0).lift(3) is None
        assert Weight.of(2, 0).lift(0) is None
        assert Weight.of(0, 0).realizable(2)

    def test_pairing_and_dominance(self):
        """Test <alpha_i check, lambda> and dominance."""
        lam = Weight.of(3, 1, 0)
        assert lam.pairing(1) == 2
        assert lam.pairing(2) == 1
        assert lam.is_dominant()
        assert not Weight.of(0, 2).is_dominant()
        with pytest.raises(WeightError):
            lam.pairing(3)

    def test_shift_root_and_reflection(self):
        """Test lambda + a alpha_i and the simple reflection."""
        assert Weight.of(1, 1).shift_root(1, 1) == Weight.of(2, 0)
        assert simple_root(2, 1) == Weight.of(2, 0)
        assert weyl_reflect(1, Weight.of(2, 0)) == Weight.of(0, 2)

    def test_rank_mismatch(self):
        """Test that adding weights of different rank fails."""
        with pytest.raises(WeightError):
            Weight.of(1, 0) + Weight.of(1, 0, 0)

    def test_dominance_order(self):
        """Test the dominance order on n = 2."""
        assert dominance_leq(Weight.of(1, 1), Weight.of(2, 0))
        assert not dominance_leq(Weight.of(2, 0), Weight.of(1, 1))
        assert dominance_leq(Weight.of(2, 0), Weight.of(2, 0))
        assert not dominance_leq(Weight.of(1, 0), Weight.of(2, 0))

    def test_dominance_independent_of_lift(self):
        """Test that shifted representatives give the same answers."""
        assert Weight.of(2, 2) == Weight.of(1, 1)
        assert dominance_leq(Weight.of(2, 2), Weight.of(3, 1))
        assert not dominance_leq(Weight.of(3, 1), Weight.of(5, 5))
        assert dominance_leq(Weight.of(1, 1, 1), Weight.of(3, 0, 0))
        assert dominance_leq(Weight.of(4, 4, 4), Weight.of(5, 2, 2))

    def test_xstar(self):
        """Test membership in the ell-multiples."""
        assert in_Xstar(Weight.of(4, 0), 2)
        assert not in_Xstar(Weight.of(3, 0), 2)
        assert divide_weight(Weight.of(4, 2), 2) == Weight.of(1, 0)
        assert divide_weight(Weight.of(3, 0), 2) is None

    @pytest.mark.parametrize("ell", [2, 3])
    def test_divide_weight_agrees_with_xstar(self, ell):
        """Test that divide_weight succeeds exactly on X* and inverts scaling."""
        for coords in compositions(6, 3):
            lam = Weight(coords)
            mu = divide_weight(lam, ell)
            assert (mu is not None) == in_Xstar(lam, ell)
            if mu is not None:
                assert mu.scale(ell) == lam


class TestWeightWindows:
    """Test cases for realizable and dominant weights."""

    def test_compositions(self):
        """Test compositions of 2 into 2 parts."""
        assert compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
        assert len(compositions(3, 2)) == 6

    def test_realizable_weights(self):
        """Test the idempotent weights of S(2, 2)."""
        assert realizable_weights(2, 2) == [Weight.of(2, 0), Weight.of(0, 2), Weight.of(0, 0)]

    def test_dominant_weights(self):
        """Test the dominant weights of S(2, 4)."""
        assert dominant_weights(2, 4) == [Weight.of(4, 0), Weight.of(2, 0), Weight.of(0, 0)]
        assert len(dominant_weights(3, 3)) == 3


class TestSaturatedSet:
    """Test cases for saturated sets."""

    def test_not_downward_closed(self):
        """Test that a complement missing a smaller weight is rejected."""
        with pytest.raises(WeightError, match="downward closed"):
            SaturatedSet(2, frozenset({Weight.of(2, 0)}))

    def test_non_dominant_complement(self):
        """Test that complement weights must be dominant."""
        with pytest.raises(WeightError):
            SaturatedSet(2, frozenset({Weight.of(0, 2)}))

    def test_membership(self):
        """Test that P holds the dominant weights outside the complement."""
        P = SaturatedSet(2, frozenset({Weight.of(0, 0)}))
        assert Weight.of(2, 0) in P
        assert Weight.of(0, 0) not in P
        assert Weight.of(0, 2) not in P

    def test_saturate(self):
        """Test the saturation of (2,0) and (3,1)."""
        P = saturate(Weight.of(2, 0), dominant_weights(2, 2))
        assert P.complement == frozenset({Weight.of(0, 0)})
        Q = saturate(Weight.of(3, 1), dominant_weights(2, 4))
        assert Q.complement == frozenset({Weight.of(2, 2)})
        assert Q.lifted_complement(4) == [[2, 2]]

    def test_saturate_non_dominant(self):
        """Test that only dominant weights can be saturated."""
        with pytest.raises(WeightError):
            saturate(Weight.of(0, 2), dominant_weights(2, 2))

    def test_subset(self):
        """Test inclusion of saturated sets through their complements."""
        P = SaturatedSet(2, frozenset({Weight.of(0, 0)}))
        everything = SaturatedSet(2, frozenset())
        assert P.is_subset(everything)
        assert not everything.is_subset(P)


if __name__ == "__main__":
    pytest.main([__file__])
