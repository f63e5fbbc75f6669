"""Tests for exact fields and echelon subspaces."""

import pytest

from src.algebra.fields import CyclotomicField, Domain, PrimeField, RationalFunctionField
from src.algebra.laurent import LaurentPoly, reduce_mod
from src.algebra.linalg import EchelonSpace, kernel, rank

V = LaurentPoly.monomial(1)


class TestFields:
    """Test cases for the coefficient fields."""

    def test_cyclotomic_field_arithmetic(self):
        """Test v^2 = -1 and inversion in Q[v]/(Phi_4)."""
        K = CyclotomicField(4)
        v = K.from_laurent(V)
        assert v * v == K.from_int(-1)
        assert v * v.inverse() == K.one
        assert K.from_laurent(LaurentPoly.monomial(-1)) == -v

    def test_cyclotomic_zero_division(self):
        """Test that zero has no inverse."""
        with pytest.raises(ZeroDivisionError):
            CyclotomicField(3).zero.inverse()

    def test_from_cyclo_checks_index(self):
        """Test that A_l elements only enter the matching field."""
        with pytest.raises(ValueError):
            CyclotomicField(4).from_cyclo(reduce_mod(V, 3))

    def test_prime_field(self):
        """Test reduction of integers into F_3."""
        F = PrimeField(3)
        assert F.is_zero(F.from_int(6))
        assert F.from_laurent(V + 1) == F.from_int(2)

    def test_domain_coercion(self):
        """Test the image of [2] in each domain."""
        two = V + LaurentPoly.monomial(-1)
        star = Domain.star(2)
        assert star.coerce(two) == star.field.from_int(2)
        cyclo = Domain.cyclotomic(2)
        assert cyclo.field.is_zero(cyclo.coerce(LaurentPoly({2: 1, 0: 1})))
        prime = Domain.prime(2)
        assert prime.field.is_zero(prime.coerce(two))
        assert Domain.generic().is_generic


class TestEchelonSpace:
    """Test cases for EchelonSpace over Q(v)."""

    def setup_method(self):
        """Set up the field for each test."""
        self.K = RationalFunctionField()
        self.v = self.K.from_laurent(V)

    def test_dependent_vectors(self):
        """Test that (1, v) and (v, v^2) span a line."""
        space = EchelonSpace(self.K, [{"a": self.K.one, "b": self.v}, {"a": self.v, "b": self.v * self.v}])
        assert space.dim == 1
        assert space.pivots == ["a"]
        assert space.contains({"a": self.v * 3, "b": self.v * self.v * 3})
        assert not space.contains({"b": self.K.one})

    def test_add_reports_growth(self):
        """Test the return value of add."""
        space = EchelonSpace(self.K)
        assert space.add({"a": self.K.one})
        assert not space.add({"a": self.v})
        assert space.add({"a": self.K.one, "b": self.K.one})
        assert space.dim == 2

    def test_reduce_normal_form(self):
        """Test that reduction is supported off the pivots."""
        space = EchelonSpace(self.K, [{"a": self.K.one, "b": self.K.one}])
        assert space.reduce({"a": self.K.one}) == {"b": -self.K.one}

    def test_equality(self):
        """Test equality of spaces with different spanning sets."""
        one = self.K.one
        first = EchelonSpace(self.K, [{"a": one}, {"b": one}])
        second = EchelonSpace(self.K, [{"a": one, "b": one}, {"a": one, "b": -one}])
        assert first == second
        assert rank(self.K, [{"a": one}, {"a": one * 2}]) == 1

    def test_kernel(self):
        """Test the kernel of x, y -> e."""
        one = self.K.one
        result = kernel(self.K, [("x", {"e": one}), ("y", {"e": one})])
        assert result == [{"x": one, "y": -one}]

    def test_kernel_injective(self):
        """Test that an injective map has trivial kernel."""
        one = self.K.one
        assert kernel(self.K, [("x", {"e": one}), ("y", {"f": one})]) == []


if __name__ == "__main__":
    pytest.main([__file__])
