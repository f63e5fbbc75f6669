"""Structure constants of S_v(n, r) for the divided-power generators.

For every generator matrix G and every basis matrix B with col(G) = row(B),
the product <G><B> = sum_C N_{G,B,C}(q) <C> is obtained by counting middle
flags at several prime powers q, interpolating the counts to a polynomial in
q and checking the interpolant against a point-by-point enumeration over
F_q at one further prime power (at the largest small enough sample when
that Grassmannian is too large).  The table stores the resulting
left-multiplication operators in the normalized basis
[A] = v^(-d_A) <A>, keyed by ``E{i}^({a})`` / ``F{i}^({a})``.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import sympy
from joblib import Parallel, delayed
from sympy import QQ, Poly
from tqdm import tqdm

from ..algebra.laurent import LaurentPoly, NonDivisibleError
from ..config import ConfigError, config
from ..geometry.finite_field import is_prime_power
from ..geometry.flaggeom import (
    count_middle_generator,
    enumerate_generator_counts,
    generator_cells,
    subspace_count,
    varying_grassmannian,
)
from ..utils_io import load_json, save_json
from .theta import (
    ThetaMatrix,
    generator_keys,
    generator_matrix,
    parse_generator_key,
    theta_enumerate,
)

logger = logging.getLogger(__name__)

_Q = sympy.Symbol("q")

Operator = Dict[ThetaMatrix, Dict[ThetaMatrix, LaurentPoly]]


class InterpolationError(RuntimeError):
    """Too few sample points, a non-integral interpolant or a held-out mismatch."""


@dataclass
class StructureTable:
    """Generator left-multiplication operators of S_v(n, r).

    ``ops[key][B]`` maps C to the coefficient of [C] in [G][B], where G is
    the generator matrix named by ``key`` with column sums row(B).
    """

    n: int
    r: int
    basis: Tuple[ThetaMatrix, ...]
    ops: Dict[str, Operator]
    provenance: Dict = field(default_factory=dict)

    def apply(self, key: str, B: ThetaMatrix) -> Dict[ThetaMatrix, LaurentPoly]:
        """[G][B] for the generator named ``key``; empty when G does not exist."""
        if key not in self.ops:
            raise KeyError(f"unknown generator {key!r} for S(n={self.n}, r={self.r})")
        return self.ops[key].get(B, {})

    def generator_for(self, key: str, B: ThetaMatrix) -> Optional[ThetaMatrix]:
        kind, i, a = parse_generator_key(key)
        return generator_matrix(kind, i, a, B.row_sums)

    @property
    def num_constants(self) -> int:
        return sum(len(row) for op in self.ops.values() for row in op.values())

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "r": self.r,
            "basis": [A.key for A in self.basis],
            "ops": {
                key: {
                    B.key: {C.key: coeff.to_json() for C, coeff in sorted(row.items())}
                    for B, row in sorted(op.items())
                }
                for key, op in sorted(self.ops.items())
            },
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: Dict) -> "StructureTable":
        ops = {
            key: {
                ThetaMatrix.from_key(b): {
                    ThetaMatrix.from_key(c): LaurentPoly.from_json(coeff) for c, coeff in row.items()
                }
                for b, row in op.items()
            }
            for key, op in data["ops"].items()
        }
        return cls(
            n=int(data["n"]),
            r=int(data["r"]),
            basis=tuple(ThetaMatrix.from_key(k) for k in data["basis"]),
            ops=ops,
            provenance=dict(data.get("provenance", {})),
        )


def degree_bound(G: ThetaMatrix, C: ThetaMatrix, kind: str, i: int, a: int) -> int:
    """a(m - a), the dimension of the Grassmannian the middle step runs over."""
    m = C.row_sums[i - 1] if kind == "E" else C.row_sums[i]
    return a * (m - a)


def interpolate_counts(points: Iterable[Tuple[int, int]], bound: int) -> LaurentPoly:
    """Integer polynomial through ``points``, returned in v with q = v^2.

    Raises:
        InterpolationError: if the interpolant is not integral or exceeds ``bound``
    """
    points = list(points)
    poly = Poly(sympy.interpolate(points, _Q), _Q, domain=QQ)
    if poly.degree() > bound:
        raise InterpolationError(f"interpolant {poly.as_expr()} exceeds degree bound {bound}")
    try:
        return LaurentPoly.from_poly(poly).substitute_power(2)
    except NonDivisibleError as exc:
        raise InterpolationError(f"non-integral interpolant {poly.as_expr()} from {points}") from exc


def _generator_tasks(n: int, r: int) -> List[Tuple[str, ThetaMatrix, ThetaMatrix]]:
    basis = theta_enumerate(n, r)
    by_rows: Dict[Tuple[int, ...], List[ThetaMatrix]] = {}
    for C in basis:
        by_rows.setdefault(C.row_sums, []).append(C)
    tasks = []
    weights = sorted({B.row_sums for B in basis}, reverse=True)
    for key in generator_keys(n, r):
        kind, i, a = parse_generator_key(key)
        for lam in weights:
            G = generator_matrix(kind, i, a, lam)
            if G is None:
                continue
            tasks.extend((key, G, C) for C in by_rows.get(G.row_sums, []))
    return tasks


def check_q(G: ThetaMatrix, C: ThetaMatrix, q_samples: List[int], held_out: int, budget: int) -> int:
    """The q at which the counts of a task are enumerated over F_q.

    The held-out q when its Grassmannian has at most ``budget`` points, else
    the largest sample that does, else the smallest sample.
    """
    grassmannian = varying_grassmannian(G, C)
    if grassmannian is None:
        return held_out
    m, d = grassmannian
    for q in [held_out] + sorted(q_samples, reverse=True):
        if subspace_count(m, d, q) <= budget:
            return q
    return min(q_samples)


def _run_task(
    key: str,
    G: ThetaMatrix,
    C: ThetaMatrix,
    q_samples: List[int],
    held_out: int,
    budget: int,
) -> Tuple[List[Tuple[str, ThetaMatrix, ThetaMatrix, LaurentPoly]], int]:
    kind, i, a = parse_generator_key(key)
    bound = degree_bound(G, C, kind, i, a)
    q_check = check_q(G, C, q_samples, held_out, budget)
    enumerated = enumerate_generator_counts(G, C, q_check)
    census = generator_cells(G, C)
    unexpected = set(enumerated) - set(census)
    if unexpected:
        raise InterpolationError(
            f"enumeration over F_{q_check} finds orbits {sorted(str(B) for B in unexpected)} "
            f"for {key} over C={C} that the cell census misses"
        )
    results = []
    for B in census:
        points = [(q, count_middle_generator(G, B, C, q)) for q in q_samples]
        N = interpolate_counts(points, bound)
        fresh = enumerated.get(B, 0)
        if N.evaluate_q(q_check) != fresh:
            raise InterpolationError(
                f"held-out check failed for {key} on B={B}, C={C}: "
                f"interpolant gives {N.evaluate_q(q_check)} at q={q_check}, enumeration gives {fresh}"
            )
        coeff = N.shift(C.d - G.d - B.d)
        results.append((key, B, C, coeff))
    return results, q_check


def build_table(
    n: int,
    r: int,
    q_samples: Optional[List[int]] = None,
    workers: Optional[int] = None,
    progress: bool = True,
) -> StructureTable:
    """Count, interpolate and normalize every generator structure constant.

    Args:
        n: Matrix size
        r: Degree
        q_samples: Prime powers to interpolate from (default: the smallest
            ones from ``config.q_candidates()``, one more held out)
        workers: joblib worker count (default ``config.max_workers``)
        progress: Show a tqdm progress bar

    Returns:
        The built table

    Raises:
        BudgetExceededError: if (n, r) is outside the configured budget
        InterpolationError: on too few samples or a failed check
    """
    config.check_budget(n, r)
    tasks = _generator_tasks(n, r)
    max_degree = max(
        (degree_bound(G, C, *parse_generator_key(key)) for key, G, C in tasks),
        default=0,
    )
    candidates = list(q_samples) if q_samples is not None else config.q_candidates()
    bad = [q for q in candidates if not is_prime_power(q)]
    if bad:
        raise ConfigError(f"q samples must be prime powers, got {bad}")
    if len(candidates) < max_degree + 2:
        raise InterpolationError(
            f"need {max_degree + 2} prime powers for degree bound {max_degree}, "
            f"have {len(candidates)} (raise QSCHUR_MAX_Q)"
        )
    samples, held_out = candidates[: max_degree + 1], candidates[max_degree + 1]
    logger.info(
        f"Building S(n={n}, r={r}): {len(tasks)} counting tasks, "
        f"degree bound {max_degree}, samples {samples}, held out q={held_out}"
    )

    workers = workers or config.max_workers
    iterator = tqdm(tasks, desc=f"S({n},{r}) counts", disable=not progress)
    batches = Parallel(n_jobs=workers)(
        delayed(_run_task)(key, G, C, samples, held_out, config.held_out_budget)
        for key, G, C in iterator
    )

    ops: Dict[str, Operator] = {key: {} for key in generator_keys(n, r)}
    fallback = 0
    for batch, q_check in batches:
        fallback += q_check != held_out
        for key, B, C, coeff in batch:
            if not coeff.is_zero:
                ops[key].setdefault(B, {})[C] = coeff
    table = StructureTable(
        n=n,
        r=r,
        basis=theta_enumerate(n, r),
        ops=ops,
        provenance={
            "q_samples": samples,
            "held_out": {"q": held_out, "passed": True, "enumerated": True, "fallback_tasks": fallback},
            "degree_bound": max_degree,
        },
    )
    logger.info(f"Built S(n={n}, r={r}): {table.num_constants} interpolated constants")
    return table


def load_or_build_table(
    n: int,
    r: int,
    force: bool = False,
    path: Optional[Path] = None,
    progress: bool = True,
) -> StructureTable:
    """Read the cached table for (n, r), building and caching it when absent."""
    path = Path(path) if path is not None else config.table_path(n, r)
    if not force:
        data = load_json(path)
        if data is not None and data.get("n") == n and data.get("r") == r:
            logger.info(f"Table cache hit: {path}")
            return StructureTable.from_json(data)
    table = build_table(n, r, progress=progress)
    save_json(table.to_json(), path)
    logger.info(f"Table written to {path}")
    return table
