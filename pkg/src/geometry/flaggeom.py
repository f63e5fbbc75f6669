"""Point counting on partial flag varieties over F_q.

Subspaces are enumerated by reduced echelon form (pivot positions plus free
entries), flags are chains of such subspaces, and the relative position of
two flags is the orbit matrix of :func:`orbit_invariant`.

Two counting paths share the same answer:

- :func:`count_middle` enumerates every middle flag and is the oracle.
- :func:`count_middle_generator` handles a generator-shaped first factor,
  where the middle flag differs from the first one in a single step.  On the
  coordinate representative the second flag induces a coordinate flag on the
  varying quotient, so each Schubert cell of the Grassmannian of that quotient
  gives a single second orbit and contributes q^(cell dimension) points.

:func:`enumerate_generator_counts` walks the same Grassmannian point by point
over F_q; table builds use it to check the cell census.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..config import BudgetExceededError, config
from ..algebra.laurent import gauss_binomial
from ..schur.theta import ThetaMatrix, generator_shape
from .finite_field import FqSubspace, PrimePowerField, coordinate_subspace, get_field, is_prime_power

logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    """Raised when two flags do not live in the same space or have different lengths."""


def grassmannian_count(r: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^r from the Gaussian binomial.

    The balanced binomial [r over k] is v^(-k(r-k)) times a polynomial in v^2.
    """
    if not 0 <= k <= r:
        return 0
    return int(gauss_binomial(r, k).shift(k * (r - k)).evaluate_q(q))


def _free_positions(pivots: Sequence[int], r: int) -> int:
    # free entries of a reduced echelon matrix with these (sorted) pivot columns
    k = len(pivots)
    return sum(r - p - k + s for s, p in enumerate(pivots))


def subspace_count(r: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^r, summed over echelon cells."""
    if not 0 <= k <= r:
        return 0
    return sum(q ** _free_positions(pivots, r) for pivots in combinations(range(r), k))


def enumerate_subspaces(
    r: int,
    k: int,
    fq: PrimePowerField,
    budget: Optional[int] = None,
) -> Iterator[FqSubspace]:
    """Yield every k-dimensional subspace of F_q^r exactly once.

    Raises:
        ValueError: if k is outside 0..r
        BudgetExceededError: if the number of subspaces exceeds ``budget``
    """
    if not 0 <= k <= r:
        raise ValueError(f"subspace dimension {k} outside 0..{r}")
    budget = config.enum_budget if budget is None else budget
    total = subspace_count(r, k, fq.q)
    if total > budget:
        raise BudgetExceededError(
            f"{total} subspaces of dimension {k} in F_{fq.q}^{r} exceed the budget {budget}"
        )
    elements = [int(x) for x in fq.elements]
    for pivots in combinations(range(r), k):
        free = [
            (s, col)
            for s, p in enumerate(pivots)
            for col in range(p + 1, r)
            if col not in pivots
        ]
        for values in product(elements, repeat=len(free)):
            rows = np.zeros((k, r), dtype=np.int64)
            for s, p in enumerate(pivots):
                rows[s, p] = 1
            for (s, col), x in zip(free, values):
                rows[s, col] = x
            yield FqSubspace.from_echelon(fq, r, rows.tolist())


# ---------------------------------------------------------------------------
# Flags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Flag:
    """0 = F_0 <= F_1 <= ... <= F_n = V; ``steps`` holds F_1, ..., F_n."""

    steps: Tuple[FqSubspace, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise DimensionMismatchError("a flag needs at least one step")
        ambient = self.steps[-1].ambient
        if self.steps[-1].dim != ambient:
            raise DimensionMismatchError(f"last step has dimension {self.steps[-1].dim}, expected {ambient}")
        for lower, upper in zip(self.steps, self.steps[1:]):
            if lower.ambient != ambient or not upper.contains(lower):
                raise DimensionMismatchError("flag steps are not nested")

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def r(self) -> int:
        return self.steps[-1].ambient

    @property
    def fq(self) -> PrimePowerField:
        return self.steps[-1].field

    def step(self, s: int) -> FqSubspace:
        """F_s for 0 <= s <= n."""
        if s == 0:
            return FqSubspace.zero(self.fq, self.r)
        return self.steps[s - 1]

    @property
    def step_dims(self) -> Tuple[int, ...]:
        """dim F_s - dim F_(s-1), s = 1..n."""
        dims = [0] + [f.dim for f in self.steps]
        return tuple(b - a for a, b in zip(dims, dims[1:]))

    def transform(self, g) -> "Flag":
        return Flag(tuple(f.transform(g) for f in self.steps))


def enumerate_flags(
    step_dims: Sequence[int],
    fq: PrimePowerField,
    budget: Optional[int] = None,
) -> Iterator[Flag]:
    """Every flag with the given step dimensions, top step first.

    Raises:
        BudgetExceededError: if the number of flags exceeds ``budget``
    """
    budget = config.enum_budget if budget is None else budget
    r = sum(step_dims)
    cumulative = list(np.cumsum(step_dims))
    total = 1
    for upper, lower in zip(reversed(cumulative), reversed([0] + cumulative[:-1])):
        total *= subspace_count(int(upper), int(lower), fq.q)
    if total > budget:
        raise BudgetExceededError(f"{total} flags of type {tuple(step_dims)} over F_{fq.q} exceed the budget {budget}")

    def extend(chain: List[FqSubspace]) -> Iterator[Flag]:
        level = len(step_dims) - len(chain)
        if level == 0:
            yield Flag(tuple(reversed(chain)))
            return
        outer = chain[-1]
        for inner in enumerate_subspaces(outer.dim, int(cumulative[level - 1]), fq, budget):
            yield from extend(chain + [outer.embed(inner.rows)])

    yield from extend([FqSubspace.whole(fq, r)])


def orbit_invariant(first: Flag, second: Flag) -> ThetaMatrix:
    """The matrix indexing the GL-orbit of the pair (first, second).

    Entry (s, k) is dim(F_s & F'_k) minus the contributions of the previous
    steps, computed as a second difference of the intersection dimensions.

    Raises:
        DimensionMismatchError: if the flags differ in ambient space or length
    """
    if first.r != second.r or first.n != second.n:
        raise DimensionMismatchError(
            f"flags of (n={first.n}, r={first.r}) and (n={second.n}, r={second.r}) cannot be compared"
        )
    n = first.n
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    for s in range(1, n + 1):
        for k in range(1, n + 1):
            table[s, k] = first.step(s).intersection_dim(second.step(k))
    entries = table[1:, 1:] - table[:-1, 1:] - table[1:, :-1] + table[:-1, :-1]
    return ThetaMatrix(tuple(tuple(int(x) for x in row) for row in entries))


@dataclass(frozen=True)
class FlagPair:
    first: Flag
    second: Flag

    @cached_property
    def invariant(self) -> ThetaMatrix:
        return orbit_invariant(self.first, self.second)

    def twist(self, g) -> "FlagPair":
        return FlagPair(self.first.transform(g), self.second.transform(g))


def basis_labels(C: ThetaMatrix) -> List[Tuple[int, int, int]]:
    """Labels (i, j, t), t < c_ij, 1-based i and j, in coordinate order."""
    labels = [
        (i + 1, j + 1, t)
        for i in range(C.n)
        for j in range(C.n)
        for t in range(C.entries[i][j])
    ]
    return sorted(labels, key=lambda lab: (lab[1], lab[0], lab[2]))


def representative_pair(C: ThetaMatrix, fq: PrimePowerField) -> FlagPair:
    """The coordinate pair of flags in the orbit indexed by C.

    F_a is spanned by the labels with i <= a and F'_b by those with j <= b.
    """
    labels = basis_labels(C)
    r = len(labels)
    first = Flag(tuple(
        coordinate_subspace(fq, r, [pos for pos, (i, _, _) in enumerate(labels) if i <= a])
        for a in range(1, C.n + 1)
    ))
    second = Flag(tuple(
        coordinate_subspace(fq, r, [pos for pos, (_, j, _) in enumerate(labels) if j <= b])
        for b in range(1, C.n + 1)
    ))
    pair = FlagPair(first, second)
    assert pair.invariant == C, f"representative pair has invariant {pair.invariant}, expected {C}"
    return pair


def twist(pair: FlagPair, rng: np.random.Generator) -> FlagPair:
    """The same orbit, moved by a random element of GL_r(F_q)."""
    fq = pair.first.fq
    return pair.twist(fq.random_invertible(pair.first.r, rng))


def _compatible(A: ThetaMatrix, B: ThetaMatrix, C: ThetaMatrix) -> bool:
    return (
        A.n == B.n == C.n
        and A.col_sums == B.row_sums
        and A.row_sums == C.row_sums
        and B.col_sums == C.col_sums
    )


def count_middle(
    A: ThetaMatrix,
    B: ThetaMatrix,
    C: ThetaMatrix,
    q: int,
    pair: Optional[FlagPair] = None,
    budget: Optional[int] = None,
) -> int:
    """#{F'' : (F, F'') in O_A, (F'', F') in O_B} for (F, F') in O_C.

    Every middle flag of type col(A) is enumerated.  ``pair`` overrides the
    coordinate representative (used for twist checks).

    Raises:
        BudgetExceededError: when the middle flags exceed the budget
    """
    if not _compatible(A, B, C):
        return 0
    fq = get_field(q)
    pair = pair or representative_pair(C, fq)
    count = 0
    for middle in enumerate_flags(A.col_sums, fq, budget):
        if orbit_invariant(pair.first, middle) == A and orbit_invariant(middle, pair.second) == B:
            count += 1
    logger.debug(f"count_middle({A}, {B}, {C}, q={q}) = {count}")
    return count


# ---------------------------------------------------------------------------
# Generator fast path
# ---------------------------------------------------------------------------


def varying_grassmannian(A: ThetaMatrix, C: ThetaMatrix) -> Optional[Tuple[int, int]]:
    """(m, d) such that the varying step of the middle flag runs over Gr(d, m).

    The quotient is row i (E) or row i+1 (F) of C.  None when A and C are
    incompatible or d falls outside 0..m.

    Raises:
        ValueError: if A is not of generator shape
    """
    shape = generator_shape(A)
    if shape is None:
        raise ValueError(f"{A} is not a generator matrix")
    if A.row_sums != C.row_sums:
        return None
    kind, i, a = shape
    m = C.row_sums[i - 1] if kind == "E" else C.row_sums[i]
    d = m - a if kind == "E" else a
    if d < 0 or d > m:
        return None
    return m, d


@lru_cache(maxsize=None)
def generator_cells(A: ThetaMatrix, C: ThetaMatrix) -> Dict[ThetaMatrix, Dict[int, int]]:
    """Cell census of the middle flags for a generator-shaped A over O_C.

    Returns B -> {cell dimension: number of cells}.  The census does not
    depend on q, so N_{A,B,C}(q) = sum of count * q^dim.

    Raises:
        ValueError: if A is not of generator shape
    """
    grassmannian = varying_grassmannian(A, C)
    if grassmannian is None:
        return {}
    kind, i, a = generator_shape(A)
    m, d = grassmannian
    c = C.array
    n = C.n
    row = i - 1 if kind == "E" else i
    blocks = [int(x) for x in c[row]]
    # coordinate order in the quotient: column blocks j = n, ..., 1
    owner = [j for j in range(n - 1, -1, -1) for _ in range(blocks[j])]
    census: Dict[ThetaMatrix, Counter] = {}
    for pivots in combinations(range(m), d):
        dim = _free_positions(pivots, m)
        delta = [0] * n
        for p in pivots:
            delta[owner[p]] += 1
        b = c.copy()
        if kind == "E":
            b[i - 1] = delta
            b[i] = c[i - 1] + c[i] - np.array(delta)
        else:
            b[i - 1] = c[i - 1] + np.array(delta)
            b[i] = c[i] - np.array(delta)
        B = ThetaMatrix(tuple(tuple(int(x) for x in r_) for r_ in b))
        census.setdefault(B, Counter())[dim] += 1
    return {B: dict(counts) for B, counts in census.items()}


def count_middle_generator(
    A: ThetaMatrix,
    B: ThetaMatrix,
    C: ThetaMatrix,
    q: int,
    budget: Optional[int] = None,
) -> int:
    """Same count as :func:`count_middle` for generator-shaped A, cell by cell.

    Raises:
        ValueError: if A is not of generator shape or q is not a prime power
        BudgetExceededError: if the number of cells exceeds ``budget``
    """
    if generator_shape(A) is None:
        raise ValueError(f"{A} is not a generator matrix")
    if not is_prime_power(q):
        raise ValueError(f"q must be a prime power, got {q}")
    if not _compatible(A, B, C):
        return 0
    budget = config.enum_budget if budget is None else budget
    census = generator_cells(A, C)
    if sum(sum(cells.values()) for cells in census.values()) > budget:
        raise BudgetExceededError(f"cell census for {A} over {C} exceeds the budget {budget}")
    return sum(count * q**dim for dim, count in census.get(B, {}).items())


def enumerate_generator_counts(
    A: ThetaMatrix,
    C: ThetaMatrix,
    q: int,
    budget: Optional[int] = None,
) -> Dict[ThetaMatrix, int]:
    """B -> N_{A,B,C}(q) for generator-shaped A, enumerated over F_q.

    Only the varying step of the middle flag is enumerated; the other steps
    are those of the first flag.  Each candidate is checked against A before
    its relative position to the second flag is recorded.

    Raises:
        ValueError: if A is not of generator shape
        BudgetExceededError: if Gr(d, m)(F_q) exceeds ``budget``
    """
    grassmannian = varying_grassmannian(A, C)
    if grassmannian is None:
        return {}
    kind, i, _ = generator_shape(A)
    m, d = grassmannian
    fq = get_field(q)
    pair = representative_pair(C, fq)
    first = pair.first
    lower = i - 1 if kind == "E" else i
    bottom = first.step(lower)
    quotient = [pos for pos, (row, _, _) in enumerate(basis_labels(C)) if row == lower + 1]
    r = first.r

    counts: Counter = Counter()
    for W in enumerate_subspaces(m, d, fq, budget):
        lifted = []
        for w in W.rows:
            vec = [0] * r
            for pos, x in zip(quotient, w):
                vec[pos] = x
            lifted.append(vec)
        steps = list(first.steps)
        steps[i - 1] = FqSubspace.from_rows(fq, r, list(bottom.rows) + lifted)
        middle = Flag(tuple(steps))
        if orbit_invariant(first, middle) != A:
            continue
        counts[orbit_invariant(middle, pair.second)] += 1
    logger.debug(f"enumerate_generator_counts({A}, {C}, q={q}): {len(counts)} orbits")
    return dict(counts)
