"""Finite fields F_q and their subspaces, on top of ``galois``.

Subspaces are stored by their reduced row-echelon basis, so two subspaces
are equal exactly when their stored rows are equal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import galois
import numpy as np
import sympy

logger = logging.getLogger(__name__)


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(sympy.factorint(q)) == 1


class PrimePowerField:
    """F_q for a prime power q (polynomial representation when q is not prime)."""

    def __init__(self, q: int, verify: bool = True) -> None:
        if not is_prime_power(q):
            raise ValueError(f"q must be a prime power, got {q}")
        ((self.p, self.e),) = sympy.factorint(q).items()
        self.q = q
        self.GF = galois.GF(q)
        if verify and q <= 64:
            self.verify_axioms()

    def __repr__(self) -> str:
        return f"PrimePowerField(q={self.q})"

    @property
    def elements(self):
        return self.GF.elements

    def array(self, data) -> galois.FieldArray:
        return self.GF(np.asarray(data, dtype=np.int64))

    def verify_axioms(self, samples: int = 4096, seed: int = 0) -> None:
        """Check the field axioms, exhaustively for q <= 16, sampled otherwise.

        Raises:
            AssertionError: if an axiom fails
        """
        if self.q <= 16:
            a = self.elements
            x, y, z = a[:, None, None], a[None, :, None], a[None, None, :]
        else:
            rng = np.random.default_rng(seed)
            x, y, z = (self.array(rng.integers(0, self.q, samples)) for _ in range(3))
        zero, one = self.GF(0), self.GF(1)
        assert np.all(x * (y + z) == x * y + x * z), f"distributivity fails in F_{self.q}"
        assert np.all((x + y) + z == x + (y + z)), f"additive associativity fails in F_{self.q}"
        assert np.all((x * y) * z == x * (y * z)), f"multiplicative associativity fails in F_{self.q}"
        assert np.all(x * y == y * x), f"commutativity fails in F_{self.q}"
        assert np.all(x + zero == x) and np.all(x * one == x), f"identities fail in F_{self.q}"
        nonzero = self.elements[1:]
        assert np.all(nonzero * nonzero**-1 == one), f"inverses fail in F_{self.q}"
        assert np.all(nonzero + (-nonzero) == zero), f"negatives fail in F_{self.q}"

    def random_invertible(self, r: int, rng: np.random.Generator) -> galois.FieldArray:
        """A uniformly sampled element of GL_r(F_q)."""
        while True:
            g = self.array(rng.integers(0, self.q, (r, r)))
            if np.linalg.matrix_rank(g) == r:
                return g


@lru_cache(maxsize=None)
def get_field(q: int) -> PrimePowerField:
    return PrimePowerField(q)


@dataclass(frozen=True)
class FqSubspace:
    """A subspace of F_q^ambient given by its reduced echelon rows."""

    q: int
    ambient: int
    rows: Tuple[Tuple[int, ...], ...]
    _field: PrimePowerField = field(compare=False, repr=False, hash=False, default=None)

    @property
    def field(self) -> PrimePowerField:
        return self._field if self._field is not None else get_field(self.q)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, fq: PrimePowerField, ambient: int) -> "FqSubspace":
        return cls(fq.q, ambient, (), fq)

    @classmethod
    def whole(cls, fq: PrimePowerField, ambient: int) -> "FqSubspace":
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient))
        return cls(fq.q, ambient, eye, fq)

    @classmethod
    def from_rows(cls, fq: PrimePowerField, ambient: int, rows) -> "FqSubspace":
        """Span of ``rows`` (any spanning set, possibly dependent)."""
        arr = np.asarray(rows, dtype=np.int64).reshape(-1, ambient)
        if arr.shape[0] == 0:
            return cls.zero(fq, ambient)
        rref = fq.array(arr).row_reduce()
        kept = tuple(
            tuple(int(x) for x in row) for row in np.asarray(rref) if np.any(row)
        )
        return cls(fq.q, ambient, kept, fq)

    @classmethod
    def from_echelon(cls, fq: PrimePowerField, ambient: int, rows: Iterable[Sequence[int]]) -> "FqSubspace":
        """Wrap rows already in reduced echelon form."""
        return cls(fq.q, ambient, tuple(tuple(int(x) for x in row) for row in rows), fq)

    def matrix(self) -> galois.FieldArray:
        return self.field.array(np.asarray(self.rows, dtype=np.int64).reshape(-1, self.ambient))

    def __add__(self, other: "FqSubspace") -> "FqSubspace":
        return FqSubspace.from_rows(self.field, self.ambient, list(self.rows) + list(other.rows))

    def intersection_dim(self, other: "FqSubspace") -> int:
        if self.dim == 0 or other.dim == 0:
            return 0
        return self.dim + other.dim - (self + other).dim

    def contains(self, other: "FqSubspace") -> bool:
        return (self + other).dim == self.dim

    def transform(self, g: galois.FieldArray) -> "FqSubspace":
        """Image under the linear map x -> x g (row vectors)."""
        if self.dim == 0:
            return self
        image = np.asarray(self.matrix() @ g)
        return FqSubspace.from_rows(self.field, self.ambient, image)

    def embed(self, inner_rows) -> "FqSubspace":
        """Subspace spanned by coordinate rows taken with respect to this basis."""
        if self.dim == 0 or len(inner_rows) == 0:
            return FqSubspace.zero(self.field, self.ambient)
        arr = np.asarray(inner_rows, dtype=np.int64).reshape(-1, self.dim)
        image = np.asarray(self.field.array(arr) @ self.matrix())
        return FqSubspace.from_rows(self.field, self.ambient, image)


def coordinate_subspace(fq: PrimePowerField, ambient: int, positions: Iterable[int]) -> FqSubspace:
    """Span of the standard basis vectors e_k, k in ``positions``."""
    rows = []
    for k in sorted(set(positions)):
        row = [0] * ambient
        row[k] = 1
        rows.append(tuple(row))
    return FqSubspace.from_echelon(fq, ambient, rows)
