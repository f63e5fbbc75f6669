"""Tests for the verification suites."""

import pytest

from src.algebra.cartan import Weight
from src.algebra.laurent import SpecializationMap
from src.schur.algebra import GeneratorSymbol
from src.verify.suites import (
    SUITE_NAMES,
    SuiteRun,
    monomial_word,
    run_suite,
    saturated_sets,
    suite_binomials,
    suite_embed,
    suite_frobenius,
    suite_gschur,
    suite_oracle,
    suite_presentation,
    suite_splitting,
    valid_ls,
)


def failures(results):
    return [(r.check, r.detail) for r in results if not r.passed]


class TestHelpers:
    """Test cases for suite helpers."""

    def test_valid_ls(self):
        """Test the admissible cyclotomic indices."""
        assert valid_ls(2) == [4]
        assert valid_ls(3) == [3, 6]

    def test_saturated_sets(self):
        """Test that S(2, 2) sees three saturated sets and S(2, 4) four."""
        assert len(saturated_sets(2, 2)) == 3
        assert len(saturated_sets(2, 4)) == 4

    def test_monomial_word(self):
        """Test that factors are applied right to left onto 1_mu."""
        mu = Weight.of(1, 1)
        word = monomial_word(mu, ("E", 1, 1), ("F", 1, 1))
        assert word == (
            GeneratorSymbol("E", Weight.of(0, 2), 1, 1),
            GeneratorSymbol("F", mu, 1, 1),
            GeneratorSymbol.idempotent(mu),
        )
        assert monomial_word(mu, ("E", 1, 0)) == (GeneratorSymbol.idempotent(mu),)

    def test_attempt_records_exceptions(self):
        """Test that an exception inside a check is a failure, not a crash."""
        run = SuiteRun("demo")
        assert not run.attempt("divide", lambda: (1 // 0 == 0, ""))
        assert run.check("ok", True)
        results = run.finish()
        assert [r.passed for r in results] == [False, True]
        assert results[0].detail.startswith("ZeroDivisionError")

    def test_unknown_suite(self):
        """Test that the dispatcher rejects unknown names."""
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("nope", 2, 2, 2)
        assert "embed" in SUITE_NAMES


class TestSuites:
    """Test cases for the suites on small algebras."""

    @pytest.mark.parametrize("ell", [2, 3])
    def test_binomials(self, ell):
        """Test binomial vanishing and factorization at small ell."""
        results = suite_binomials(ell=ell, m_max=12)
        assert results
        assert not failures(results)

    def test_presentation_generic(self, table_2_2):
        """Test the relations of S(2, 2) over Q(v)."""
        results = suite_presentation(2, 2)
        assert results
        assert not failures(results)

    def test_presentation_cyclotomic(self, table_2_2):
        """Test the relations of S(2, 2) over A_4."""
        assert not failures(suite_presentation(2, 2, SpecializationMap.star(2, 4)))

    @pytest.mark.slow
    def test_presentation_rank_two(self):
        """Test the relations of S(3, 2), Serre relations included."""
        results = suite_presentation(3, 2)
        assert any("serre" in r.check for r in results)
        assert not failures(results)

    @pytest.mark.parametrize("r", [1, 2])
    def test_oracle(self, r, table_2_1, table_2_2):
        """Test interpolated constants against enumeration."""
        assert not failures(suite_oracle(2, r, q_list=(2, 3), samples=20))

    @pytest.mark.slow
    def test_oracle_rank_two(self):
        """Test interpolated constants of S(3, 2) against enumeration at q = 2, 3."""
        results = suite_oracle(3, 2, q_list=(2, 3))
        assert results
        assert not failures(results)

    def test_frobenius(self, table_2_1, table_2_2):
        """Test Fr checks for S(2, 2) -> S(2, 1)."""
        assert not failures(suite_frobenius(2, 1, 2))

    def test_splitting(self, table_2_1, table_2_2):
        """Test c checks for S(2, 1) -> S(2, 2)."""
        assert not failures(suite_splitting(2, 1, 2))

    @pytest.mark.parametrize("l", [3, 6])
    def test_splitting_odd_ell(self, l):
        """Test c checks for S(2, 1) -> S(2, 3) with both cyclotomic indices."""
        results = suite_splitting(2, 1, 3, l=l)
        assert results
        assert not failures(results)

    @pytest.mark.slow
    def test_splitting_degree_two(self, table_2_2, table_2_4):
        """Test c checks for S(2, 2) -> S(2, 4)."""
        results = suite_splitting(2, 2, 2)
        assert results
        assert not failures(results)

    def test_gschur(self, table_2_2):
        """Test Weyl module and quotient checks on S(2, 2)."""
        assert not failures(suite_gschur(2, 2, 2))

    @pytest.mark.slow
    def test_embed(self, table_2_1, table_2_2):
        """Test descent of Fr and c to every quotient of S(2, 2)."""
        assert not failures(suite_embed(2, 1, 2))

    @pytest.mark.slow
    def test_embed_degree_two(self, table_2_2, table_2_4):
        """Test descent of Fr and c to every quotient of S(2, 4)."""
        assert not failures(suite_embed(2, 2, 2))


if __name__ == "__main__":
    pytest.main([__file__])
