"""Tests for the exact coefficient arithmetic."""

import pytest

from src.algebra.laurent import (
    CycloElem,
    LaurentPoly,
    NonDivisibleError,
    SpecializationError,
    SpecializationMap,
    cyclotomic,
    default_l,
    epsilon,
    exact_divide,
    gauss_binomial,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
    reduce_mod,
)

V = LaurentPoly.monomial(1)
V_INV = LaurentPoly.monomial(-1)


class TestLaurentPoly:
    """Test cases for LaurentPoly arithmetic."""

    def test_zero_coefficients_dropped(self):
        """Test that zero coefficients are not stored."""
        p = LaurentPoly({0: 1, 2: 0, -1: 3})
        assert p.coeffs == {0: 1, -1: 3}
        assert LaurentPoly({5: 0}).is_zero

    def test_ring_operations(self):
        """Test sums, products and comparison with integers."""
        assert (V + V_INV) * (V - V_INV) == LaurentPoly({2: 1, -2: -1})
        assert V * V_INV == 1
        assert V**3 == LaurentPoly.monomial(3)
        assert V ** -2 == LaurentPoly.monomial(-2)

    def test_non_unit_negative_power(self):
        """Test that only monomial units can be inverted."""
        with pytest.raises(NonDivisibleError):
            (V + 1) ** -1

    def test_bar_and_shift(self):
        """Test the bar involution and multiplication by powers of v."""
        p = LaurentPoly({3: 2, -1: 1})
        assert p.bar() == LaurentPoly({-3: 2, 1: 1})
        assert p.shift(1) == LaurentPoly({4: 2, 0: 1})

    def test_evaluate_q_requires_even_exponents(self):
        """Test evaluation at v^2 = q."""
        assert LaurentPoly({2: 1, 0: 1}).evaluate_q(3) == 4
        with pytest.raises(ValueError, match="odd exponents"):
            (V + 1).evaluate_q(2)

    def test_json_encoding(self):
        """Test the coefficient map encoding."""
        p = LaurentPoly({-2: 1, 1: -3})
        assert p.to_json() == {"coeffs": {"-2": 1, "1": -3}}
        assert LaurentPoly.from_json(p.to_json()) == p


class TestExactDivide:
    """Test cases for exact division."""

    def test_square_of_two(self):
        """Test [2]^2 / [2] = v + v^-1."""
        two = quantum_integer(2)
        assert exact_divide(two * two, two) == V + V_INV

    def test_four_times_three(self):
        """Test [4][3] / [2] = (v^2 + v^-2)(v^2 + 1 + v^-2)."""
        expected = LaurentPoly({2: 1, -2: 1}) * LaurentPoly({2: 1, 0: 1, -2: 1})
        assert exact_divide(quantum_integer(4) * quantum_integer(3), quantum_integer(2)) == expected

    def test_non_divisible(self):
        """Test that v - 1 does not divide v + 1."""
        with pytest.raises(NonDivisibleError):
            exact_divide(V + 1, V - 1)

    def test_division_by_zero(self):
        """Test division by the zero polynomial."""
        with pytest.raises(ZeroDivisionError):
            exact_divide(V, LaurentPoly.zero())


class TestBinomials:
    """Test cases for quantum integers and Gaussian binomials."""

    def test_quantum_integer(self):
        """Test [3] = v^2 + 1 + v^-2 and [-2] = -[2]."""
        assert quantum_integer(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
        assert quantum_integer(-2) == -(V + V_INV)
        assert quantum_integer(0).is_zero

    def test_gauss_binomial_small(self):
        """Test [2 over 1] = [2] and the boundary cases."""
        assert gauss_binomial(2, 1) == V + V_INV
        assert gauss_binomial(5, 0) == 1
        assert gauss_binomial(5, 5) == 1
        assert gauss_binomial(3, 4).is_zero

    def test_symmetry_bar_and_classical_value(self):
        """Test symmetry, bar invariance and the value at v = 1."""
        for m in range(9):
            for k in range(m + 1):
                b = gauss_binomial(m, k)
                assert b == gauss_binomial(m, m - k)
                assert b.bar() == b
                assert gauss_binomial(m, k, 2).evaluate(1) == gauss_binomial(m, k).evaluate(1)
        assert gauss_binomial(6, 3).evaluate(1) == 20

    def test_factorial_quotient(self):
        """Test [m over k] = [m]! / ([k]! [m-k]!)."""
        quotient = exact_divide(quantum_factorial(6), quantum_factorial(2) * quantum_factorial(4))
        assert quotient == gauss_binomial(6, 2)

    def test_negative_top_entry(self):
        """Test binomials with a negative top entry."""
        assert quantum_binomial(-1, 2) == 1
        assert quantum_binomial(-2, 1) == -(V + V_INV)
        assert quantum_binomial(3, -1).is_zero
        assert quantum_binomial(4, 2) == gauss_binomial(4, 2)


class TestCyclotomic:
    """Test cases for the quotients A_l."""

    def test_cyclotomic_polynomials(self):
        """Test Phi_1, Phi_4 and Phi_6."""
        assert cyclotomic(1) == V - 1
        assert cyclotomic(4) == LaurentPoly({2: 1, 0: 1})
        assert cyclotomic(6) == LaurentPoly({2: 1, 1: -1, 0: 1})

    def test_reduce_mod_folds_negative_exponents(self):
        """Test that v^-1 reduces to -v in A_4."""
        assert reduce_mod(V_INV, 4) == CycloElem(4, [0, -1])
        assert reduce_mod(V, 4) * reduce_mod(V_INV, 4) == 1

    def test_vanishing_binomial(self):
        """Test [4 over 1] = [4] = 0 in A_4 and [6 over 2] = 0 in A_3."""
        assert reduce_mod(gauss_binomial(4, 1), 4).is_zero
        assert reduce_mod(gauss_binomial(6, 2), 3).is_zero
        assert not reduce_mod(gauss_binomial(6, 3), 3).is_zero

    def test_epsilon(self):
        """Test the sign of v^(ell^2) in A_l."""
        assert epsilon(2, 4) == 1
        assert epsilon(3, 6) == -1
        assert epsilon(3, 3) == 1

    def test_evaluate_at_one(self):
        """Test v -> 1 into F_p and its validity condition."""
        assert reduce_mod(quantum_integer(3), 3).evaluate_at_one(3) == 0
        assert reduce_mod(LaurentPoly.constant(5), 4).evaluate_at_one(2) == 1
        with pytest.raises(SpecializationError):
            CycloElem.one(3).evaluate_at_one(2)

    def test_default_l(self):
        """Test the default cyclotomic index."""
        assert default_l(2) == 4
        assert default_l(3) == 3


class TestSpecializationMap:
    """Test cases for specialization maps."""

    def test_tags(self):
        """Test the ring tags of each kind."""
        assert SpecializationMap.generic().tag == "generic"
        assert SpecializationMap.cyclotomic(2).tag == "cyclo:4"
        assert SpecializationMap.star(3, 6).tag == "cyclo:6"
        assert SpecializationMap.prime(2).tag == "prime:2"

    def test_star_uses_epsilon(self):
        """Test that v acts as epsilon in the star specialization."""
        star = SpecializationMap.star(3, 6)
        assert star(V) == -1
        assert star(V + V_INV) == -2

    def test_invalid_pairs(self):
        """Test rejection of bad ell/l pairs and primes."""
        with pytest.raises(SpecializationError):
            SpecializationMap("cyclotomic", 2, 2)
        with pytest.raises(SpecializationError):
            SpecializationMap("cyclotomic", 3, 5)
        with pytest.raises(SpecializationError):
            SpecializationMap("prime", 3, 6, 3)


if __name__ == "__main__":
    pytest.main([__file__])
