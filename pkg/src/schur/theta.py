"""The index set Theta_r of S(n, r): n x n nonnegative integer matrices.

Also the codimension-type exponent d_A, the closure order on matrices with
fixed marginals, and the shapes of the divided-power generator matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.cartan import Weight, compositions


@dataclass(frozen=True, order=True)
class ThetaMatrix:
    """An n x n matrix of nonnegative integers, rows stored as tuples."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ValueError(f"ThetaMatrix must be square, got {self.entries}")
        if any(x < 0 for row in rows for x in row):
            raise ValueError(f"ThetaMatrix entries must be nonnegative, got {self.entries}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "ThetaMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def from_key(cls, key: str) -> "ThetaMatrix":
        """Parse the flattened form ``"a11,a12|a21,a22"``."""
        return cls(tuple(tuple(int(x) for x in row.split(",")) for row in key.split("|")))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "ThetaMatrix":
        n = len(diag)
        return cls(tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def key(self) -> str:
        return "|".join(",".join(str(x) for x in row) for row in self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.entries, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @property
    def r(self) -> int:
        return int(self.array.sum())

    @property
    def row_sums(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.array.sum(axis=1))

    @property
    def col_sums(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.array.sum(axis=0))

    @property
    def row_weight(self) -> Weight:
        return Weight(self.row_sums)

    @property
    def col_weight(self) -> Weight:
        return Weight(self.col_sums)

    @cached_property
    def d(self) -> int:
        return codim_d(self)

    def is_diagonal(self) -> bool:
        return not np.any(self.array - np.diag(np.diag(self.array)))

    def scale(self, k: int) -> "ThetaMatrix":
        return ThetaMatrix(tuple(tuple(k * x for x in row) for row in self.entries))

    def divide(self, k: int) -> Optional["ThetaMatrix"]:
        """A / k when every entry is divisible by k, else None."""
        if np.any(self.array % k):
            return None
        return ThetaMatrix(tuple(tuple(x // k for x in row) for row in self.entries))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


def codim_d(A: ThetaMatrix) -> int:
    """d_A = sum over i >= k, j < l of a_ij * a_kl."""
    a = A.array
    # upper_right[i, j] = sum_{k <= i, l > j} a_kl
    cum_rows = np.cumsum(a, axis=0)
    tail_cols = np.cumsum(cum_rows[:, ::-1], axis=1)[:, ::-1]
    upper_right = np.zeros_like(a)
    upper_right[:, :-1] = tail_cols[:, 1:]
    return int((a * upper_right).sum())


@lru_cache(maxsize=None)
def theta_enumerate(n: int, r: int) -> Tuple[ThetaMatrix, ...]:
    """All of Theta_r for n x n matrices, in a fixed sorted order."""
    if n < 1 or r < 0:
        raise ValueError(f"need n >= 1 and r >= 0, got n={n}, r={r}")
    mats = [
        ThetaMatrix(tuple(tuple(c[i * n:(i + 1) * n]) for i in range(n)))
        for c in compositions(n * n, r)
    ]
    return tuple(sorted(mats))


@lru_cache(maxsize=None)
def with_marginals(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Tuple[ThetaMatrix, ...]:
    """Matrices in Theta_r with the given row and column sums."""
    if sum(rows) != sum(cols) or len(rows) != len(cols):
        return ()
    return tuple(
        A for A in theta_enumerate(len(rows), sum(rows))
        if A.row_sums == rows and A.col_sums == cols
    )


def _upper_corners(A: ThetaMatrix) -> np.ndarray:
    # corner[s, t] = sum_{i <= s, j >= t} a_ij
    cum_rows = np.cumsum(A.array, axis=0)
    return np.cumsum(cum_rows[:, ::-1], axis=1)[:, ::-1]


def order_leq(B: ThetaMatrix, A: ThetaMatrix) -> bool:
    """B <= A in the closure order.

    Equal marginals, and every upper-right corner sum of B is at most the
    corresponding one of A (for n = 2: b11 >= a11).
    """
    if B.n != A.n or B.row_sums != A.row_sums or B.col_sums != A.col_sums:
        return False
    return bool(np.all(_upper_corners(B) <= _upper_corners(A)))


def order_lt(B: ThetaMatrix, A: ThetaMatrix) -> bool:
    return B != A and order_leq(B, A)


# ---------------------------------------------------------------------------
# Generator shapes
# ---------------------------------------------------------------------------


def generator_key(kind: str, i: int, a: int) -> str:
    return f"{kind}{i}^({a})"


def parse_generator_key(key: str) -> Tuple[str, int, int]:
    kind = key[0]
    i_text, a_text = key[1:].split("^(")
    return kind, int(i_text), int(a_text.rstrip(")"))


def generator_matrix(kind: str, i: int, a: int, cols: Sequence[int]) -> Optional[ThetaMatrix]:
    """The matrix of E_i^(a) 1_lambda or F_i^(a) 1_lambda, lambda = ``cols``.

    E: diagonal lambda with a moved to position (i, i+1); F: moved to
    (i+1, i).  Indices are 1-based.  Returns None when an entry would be
    negative.
    """
    n = len(cols)
    if not 1 <= i < n:
        raise ValueError(f"generator index {i} out of range for n={n}")
    m = np.diag(np.array(cols, dtype=np.int64))
    if kind == "E":
        m[i - 1, i] = a
        m[i, i] -= a
    elif kind == "F":
        m[i, i - 1] = a
        m[i - 1, i - 1] -= a
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    if np.any(m < 0):
        return None
    return ThetaMatrix(tuple(tuple(int(x) for x in row) for row in m))


def generator_shape(A: ThetaMatrix) -> Optional[Tuple[str, int, int]]:
    """(kind, i, a) when A is a generator matrix, else None."""
    off = A.array - np.diag(np.diag(A.array))
    nz = list(zip(*np.nonzero(off)))
    if len(nz) != 1:
        return None
    (row, col), = nz
    a = int(off[row, col])
    if col == row + 1:
        return "E", row + 1, a
    if row == col + 1:
        return "F", col + 1, a
    return None


def generator_keys(n: int, r: int) -> List[str]:
    return [generator_key(kind, i, a) for kind in ("E", "F") for i in range(1, n) for a in range(1, r + 1)]
