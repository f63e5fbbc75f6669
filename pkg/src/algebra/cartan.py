"""Cartan data, type A root data, the ell-modified datum and saturated sets.

Weights of type A live in X = Z^n / Z(1, ..., 1).  A weight is stored as
its canonical representative, the integer vector whose minimum entry is 0,
so equality is plain tuple equality.  All order statements below are
independent of the lift used to compute them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import gcd
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class CartanDatumError(ValueError):
    """Raised when a pairing matrix violates the Cartan datum axioms."""


class WeightError(ValueError):
    """Raised for malformed weights, rank mismatches or non-dominant input."""


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartanDatum:
    """A finite index set with a symmetric integer pairing ``i . j``.

    Indices are 1-based in the public API.
    """

    pairing: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        self.validate()

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "CartanDatum":
        return cls(tuple(tuple(int(x) for x in row) for row in matrix))

    @classmethod
    def type_a(cls, rank: int) -> "CartanDatum":
        """The simply-laced chain with ``rank`` nodes (i.i = 2, adjacent i.j = -1)."""
        m = np.zeros((rank, rank), dtype=int)
        for i in range(rank):
            m[i, i] = 2
            if i + 1 < rank:
                m[i, i + 1] = m[i + 1, i] = -1
        return cls.from_matrix(m.tolist())

    @property
    def rank(self) -> int:
        return len(self.pairing)

    def dot(self, i: int, j: int) -> int:
        return self.pairing[i - 1][j - 1]

    def cartan_entry(self, i: int, j: int) -> int:
        """a_ij = 2 (i.j) / (i.i)."""
        return 2 * self.dot(i, j) // self.dot(i, i)

    def validate(self) -> None:
        m = np.array(self.pairing, dtype=int)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise CartanDatumError(f"pairing must be a nonempty square matrix, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise CartanDatumError("pairing matrix is not symmetric")
        for i in range(m.shape[0]):
            if m[i, i] <= 0 or m[i, i] % 2:
                raise CartanDatumError(f"i.i must lie in {{2, 4, 6, ...}}, got {m[i, i]} at index {i + 1}")
        for i in range(m.shape[0]):
            for j in range(m.shape[0]):
                if i == j:
                    continue
                num = 2 * m[i, j]
                if num % m[i, i] or num > 0:
                    raise CartanDatumError(
                        f"2(i.j)/(i.i) must be a nonpositive integer, got {num}/{m[i, i]} at ({i + 1}, {j + 1})"
                    )


def l_factor(datum: CartanDatum, i: int, ell: int) -> int:
    """Smallest positive l_i with l_i * (i.i / 2) in ell Z."""
    if ell < 1:
        raise ValueError(f"ell must be positive, got {ell}")
    half = datum.dot(i, i) // 2
    return ell // gcd(ell, half)


@dataclass(frozen=True)
class ModifiedDatum:
    """The ell-modified datum with star pairing i o j = l_i l_j (i.j)."""

    base: CartanDatum
    ell: int
    factors: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        factors = tuple(l_factor(self.base, i, self.ell) for i in range(1, self.base.rank + 1))
        object.__setattr__(self, "factors", factors)

    def star_dot(self, i: int, j: int) -> int:
        return self.factors[i - 1] * self.factors[j - 1] * self.base.dot(i, j)

    def as_cartan_datum(self) -> CartanDatum:
        """The star pairing as a Cartan datum (validated on construction)."""
        rank = self.base.rank
        return CartanDatum.from_matrix(
            [[self.star_dot(i, j) for j in range(1, rank + 1)] for i in range(1, rank + 1)]
        )


def star_datum(datum: CartanDatum, ell: int) -> CartanDatum:
    return ModifiedDatum(datum, ell).as_cartan_datum()


# ---------------------------------------------------------------------------
# Type A weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Weight:
    """Canonical representative of an element of Z^n / Z(1, ..., 1)."""

    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 2:
            raise WeightError(f"type A weights need n >= 2 coordinates, got {self.coords}")
        low = min(self.coords)
        if low != 0:
            object.__setattr__(self, "coords", tuple(int(c) - low for c in self.coords))
        else:
            object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def of(cls, *entries) -> "Weight":
        """Weight.of(2, 0) or Weight.of((2, 0))."""
        if len(entries) == 1 and not isinstance(entries[0], (int, np.integer)):
            entries = tuple(entries[0])
        return cls(tuple(int(e) for e in entries))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def degree(self) -> int:
        """Entry sum of the canonical representative."""
        return sum(self.coords)

    def lift(self, r: int) -> Optional[Tuple[int, ...]]:
        """The representative with entry sum r, if it has nonnegative entries."""
        k, rem = divmod(r - self.degree, self.n)
        if rem or k < 0:
            return None
        return tuple(c + k for c in self.coords)

    def realizable(self, r: int) -> bool:
        return self.lift(r) is not None

    def pairing(self, i: int) -> int:
        """<alpha_i check, lambda> = lambda_i - lambda_{i+1}."""
        if not 1 <= i < self.n:
            raise WeightError(f"root index {i} out of range for n={self.n}")
        return self.coords[i - 1] - self.coords[i]

    def is_dominant(self) -> bool:
        return all(self.coords[i] >= self.coords[i + 1] for i in range(self.n - 1))

    def _check_rank(self, other: "Weight") -> None:
        if other.n != self.n:
            raise WeightError(f"rank mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * c for c in self.coords))

    def shift_root(self, i: int, a: int) -> "Weight":
        """lambda + a * alpha_i."""
        coords = list(self.coords)
        coords[i - 1] += a
        coords[i] -= a
        return Weight(tuple(coords))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def simple_root(n: int, i: int) -> Weight:
    coords = [0] * n
    coords[i - 1] = 1
    coords[i] = -1
    return Weight(tuple(coords))


def dominance_leq(lam: Weight, mu: Weight) -> bool:
    """True iff mu - lam is a nonnegative combination of simple roots."""
    lam._check_rank(mu)
    n = lam.n
    shift, rem = divmod(mu.degree - lam.degree, n)
    if rem:
        return False
    diff = np.array(mu.coords) - (np.array(lam.coords) + shift)
    return bool(np.all(np.cumsum(diff)[:-1] >= 0))


def in_Xstar(lam: Weight, ell: int) -> bool:
    """True iff every <alpha_i check, lambda> lies in l_i Z (l_i = ell in type A).

    In type A this is equivalent to lambda = ell * mu in X for some mu,
    see :func:`divide_weight`.
    """
    datum = CartanDatum.type_a(lam.n - 1)
    return all(lam.pairing(i) % l_factor(datum, i, ell) == 0 for i in range(1, lam.n))


def divide_weight(lam: Weight, ell: int) -> Optional[Weight]:
    """mu with ell * mu = lam in X, or None when lam is not in X*."""
    if not in_Xstar(lam, ell):
        return None
    # the canonical representative has a zero entry, so every entry is divisible
    mu = Weight(tuple(c // ell for c in lam.coords))
    assert mu.scale(ell) == lam, f"{lam} is in X* but {mu} does not divide it"
    return mu


def weyl_reflect(i: int, lam: Weight) -> Weight:
    """s_i(lambda) = lambda - <alpha_i check, lambda> alpha_i."""
    return lam.shift_root(i, -lam.pairing(i))


def compositions(n: int, r: int) -> List[Tuple[int, ...]]:
    """All n-tuples of nonnegative integers with sum r."""
    result = []
    for bars in combinations_with_replacement(range(r + 1), n - 1):
        parts = [bars[0]] + [bars[k] - bars[k - 1] for k in range(1, n - 1)] + [r - bars[-1]]
        result.append(tuple(parts))
    return sorted(result, reverse=True)


def realizable_weights(n: int, r: int) -> List[Weight]:
    """Weights with a nonnegative lift of entry sum r (the idempotents of S(n, r))."""
    return sorted({Weight(c) for c in compositions(n, r)}, reverse=True)


def dominant_weights(n: int, r: int) -> List[Weight]:
    """Realizable dominant weights of S(n, r): partitions of r with at most n parts."""
    return [w for w in realizable_weights(n, r) if w.is_dominant()]


# ---------------------------------------------------------------------------
# Saturated sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SaturatedSet:
    """A saturated set P, represented by its finite complement X+ minus P."""

    n: int
    complement: FrozenSet[Weight]

    def __post_init__(self) -> None:
        object.__setattr__(self, "complement", frozenset(self.complement))
        for w in self.complement:
            if w.n != self.n:
                raise WeightError(f"complement weight {w} has rank {w.n}, expected {self.n}")
            if not w.is_dominant():
                raise WeightError(f"complement weight {w} is not dominant")
        self.validate()

    def validate(self) -> None:
        """The complement must be downward closed among dominant weights."""
        for w in self.complement:
            for nu in dominant_weights(self.n, w.degree):
                if dominance_leq(nu, w) and nu not in self.complement:
                    raise WeightError(
                        f"complement is not downward closed: {nu} <= {w} but {nu} is missing"
                    )

    def __contains__(self, lam: Weight) -> bool:
        return lam.is_dominant() and lam not in self.complement

    def is_subset(self, other: "SaturatedSet") -> bool:
        """P <= P' iff the complement of P' lies inside the complement of P."""
        return other.complement <= self.complement

    def lifted_complement(self, r: int) -> List[List[int]]:
        """Complement as lifts of entry sum r where possible (for reports)."""
        rows = []
        for w in sorted(self.complement, reverse=True):
            lift = w.lift(r)
            rows.append(list(lift if lift is not None else w.coords))
        return rows


def saturate(lam: Weight, window: Iterable[Weight]) -> SaturatedSet:
    """The saturation of lambda: P = {mu dominant : mu >= lambda}.

    The complement is taken inside the dominant weights of ``window``.
    """
    if not lam.is_dominant():
        raise WeightError(f"{lam} is not dominant")
    window = [w for w in window if w.is_dominant()]
    complement = [w for w in window if not dominance_leq(lam, w)]
    logger.debug(f"saturate({lam}) -> complement {[str(w) for w in complement]}")
    return SaturatedSet(lam.n, frozenset(complement))
