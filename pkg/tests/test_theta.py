"""Tests for orbit matrices, the closure order and generator shapes."""

import pytest

from src.algebra.cartan import Weight
from src.schur.theta import (
    ThetaMatrix,
    codim_d,
    generator_key,
    generator_keys,
    generator_matrix,
    generator_shape,
    order_leq,
    order_lt,
    parse_generator_key,
    theta_enumerate,
    with_marginals,
)


def M(*rows):
    return ThetaMatrix.of(rows)


class TestThetaMatrix:
    """Test cases for ThetaMatrix."""

    def test_validation(self):
        """Test that non-square or negative input is rejected."""
        with pytest.raises(ValueError, match="square"):
            ThetaMatrix.of([[1, 0]])
        with pytest.raises(ValueError, match="nonnegative"):
            M([1, -1], [0, 0])

    def test_key(self):
        """Test the flattened key form."""
        A = M([0, 1], [1, 0])
        assert A.key == "0,1|1,0"
        assert ThetaMatrix.from_key("0,1|1,0") == A

    def test_marginals_and_weights(self):
        """Test row and column sums and the weights they name."""
        A = M([2, 1], [0, 1])
        assert A.r == 4
        assert A.row_sums == (3, 1)
        assert A.col_sums == (2, 2)
        assert A.row_weight == Weight.of(2, 0)
        assert A.col_weight == Weight.of(0, 0)

    def test_diagonal(self):
        """Test diagonal construction and detection."""
        D = ThetaMatrix.diagonal([2, 1])
        assert D == M([2, 0], [0, 1])
        assert D.is_diagonal()
        assert not M([0, 1], [0, 0]).is_diagonal()

    def test_scale_and_divide(self):
        """Test entrywise scaling and division."""
        A = M([1, 2], [0, 1])
        assert A.scale(2).divide(2) == A
        assert M([2, 0], [0, 1]).divide(3) is None


class TestCodimension:
    """Test cases for d_A."""

    def test_examples(self):
        """Test d on small matrices."""
        assert codim_d(M([0, 1], [1, 0])) == 1
        assert M([1, 1], [1, 1]).d == 3
        assert M([1, 1], [0, 0]).d == 1
        assert ThetaMatrix.diagonal([3, 2]).d == 0

    def test_lower_triangular_generator(self):
        """Test that an F-shaped generator with empty upper part has d = 0."""
        assert M([0, 0], [1, 0]).d == 0


class TestEnumeration:
    """Test cases for Theta_r."""

    def test_sizes(self):
        """Test the number of matrices for small n and r."""
        assert len(theta_enumerate(2, 1)) == 4
        assert len(theta_enumerate(2, 2)) == 10
        assert len(theta_enumerate(3, 1)) == 9
        assert len(theta_enumerate(2, 4)) == 35

    def test_invalid(self):
        """Test rejection of n = 0."""
        with pytest.raises(ValueError):
            theta_enumerate(0, 1)

    def test_with_marginals(self):
        """Test the matrices with fixed row and column sums."""
        assert set(with_marginals((1, 1), (1, 1))) == {M([1, 0], [0, 1]), M([0, 1], [1, 0])}
        assert with_marginals((2, 0), (1, 0)) == ()


class TestOrder:
    """Test cases for the closure order."""

    def test_corner_comparison(self):
        """Test that [1 1; 1 1] lies below [0 2; 2 0]."""
        low, high = M([1, 1], [1, 1]), M([0, 2], [2, 0])
        assert order_leq(low, high)
        assert not order_leq(high, low)
        assert order_lt(low, high)
        assert not order_lt(high, high)

    def test_diagonal_is_minimal(self):
        """Test that the diagonal matrix is below the antidiagonal one."""
        assert order_leq(M([1, 0], [0, 1]), M([0, 1], [1, 0]))

    def test_different_marginals(self):
        """Test that matrices with different marginals are incomparable."""
        assert not order_leq(M([1, 0], [0, 1]), M([2, 0], [0, 0]))


class TestGenerators:
    """Test cases for generator matrices and keys."""

    def test_generator_matrix(self):
        """Test E and F generator matrices."""
        assert generator_matrix("E", 1, 2, (0, 2)) == M([0, 2], [0, 0])
        assert generator_matrix("F", 1, 1, (1, 1)) == M([0, 0], [1, 1])
        assert generator_matrix("E", 1, 1, (1, 0)) is None

    def test_generator_matrix_errors(self):
        """Test out-of-range indices and unknown kinds."""
        with pytest.raises(ValueError):
            generator_matrix("E", 2, 1, (1, 1))
        with pytest.raises(ValueError):
            generator_matrix("G", 1, 1, (1, 1))

    def test_generator_shape(self):
        """Test recognition of generator shapes."""
        assert generator_shape(M([0, 2], [0, 0])) == ("E", 1, 2)
        assert generator_shape(M([1, 0], [1, 1])) == ("F", 1, 1)
        assert generator_shape(ThetaMatrix.diagonal([1, 1])) is None
        assert generator_shape(M([0, 0, 1], [0, 0, 0], [0, 0, 0])) is None
        assert generator_shape(M([0, 1], [1, 0])) is None

    def test_keys(self):
        """Test key formatting and parsing."""
        assert generator_key("E", 1, 2) == "E1^(2)"
        assert parse_generator_key("F2^(3)") == ("F", 2, 3)
        assert generator_keys(2, 2) == ["E1^(1)", "E1^(2)", "F1^(1)", "F1^(2)"]


if __name__ == "__main__":
    pytest.main([__file__])
