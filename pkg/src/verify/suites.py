"""Named verification suites.

Each suite returns a list of :class:`~src.verify.report.CheckResult`, one per
assertion, and never raises on a failed check; unexpected exceptions inside a
check are recorded as failures with the exception text.
"""

import logging
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.cartan import (
    SaturatedSet,
    Weight,
    WeightError,
    divide_weight,
    dominant_weights,
    realizable_weights,
)
from ..algebra.fields import Domain
from ..algebra.laurent import (
    GENERIC,
    LaurentPoly,
    NonDivisibleError,
    SpecializationMap,
    epsilon,
    exact_divide,
    gauss_binomial,
    quantum_binomial,
    quantum_factorial,
    reduce_mod,
)
from ..config import config
from ..geometry.finite_field import get_field
from ..geometry.flaggeom import (
    count_middle,
    count_middle_generator,
    representative_pair,
    twist,
)
from ..schur.algebra import GeneratorSymbol, SchurAlgebra, SchurElement, brute_oracle_product
from ..schur.frob import FrobeniusPair, compare_with_fm
from ..schur.gschur import (
    DescentError,
    annihilator_check,
    cartan_image,
    descend_maps,
    filtration_check,
    ideal_generated,
    quotient,
    weyl_module,
)
from ..schur.table import load_or_build_table
from ..schur.theta import ThetaMatrix, generator_matrix, parse_generator_key, with_marginals
from .report import CheckResult

logger = logging.getLogger(__name__)

SUITE_NAMES = ("binomials", "presentation", "oracle", "frobenius", "splitting", "fm", "gschur", "embed")


class SuiteRun:
    """Collects the checks of one suite."""

    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.results: List[CheckResult] = []

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        passed = bool(passed)
        self.results.append(CheckResult(self.suite, name, passed, detail))
        if not passed:
            logger.warning(f"[{self.suite}] {name} failed {detail}")
        return passed

    def attempt(self, name: str, fn: Callable[[], Tuple[bool, str]]) -> bool:
        """Run ``fn`` returning (passed, detail); an exception counts as a failure."""
        try:
            passed, detail = fn()
        except (AssertionError, ArithmeticError, ValueError, KeyError) as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        return self.check(name, passed, detail)

    def finish(self) -> List[CheckResult]:
        failed = sum(not r.passed for r in self.results)
        logger.info(f"Suite {self.suite}: {len(self.results)} checks, {failed} failed")
        return self.results


def valid_ls(ell: int) -> List[int]:
    """Cyclotomic indices allowed for ell: 2 ell for even ell, ell and 2 ell for odd."""
    return [2 * ell] if ell % 2 == 0 else [ell, 2 * ell]


def saturated_sets(n: int, r: int) -> List[SaturatedSet]:
    """Every saturated set whose complement consists of dominant weights of S(n, r)."""
    weights = dominant_weights(n, r)
    result = []
    for size in range(len(weights) + 1):
        for complement in combinations(weights, size):
            try:
                result.append(SaturatedSet(n, frozenset(complement)))
            except WeightError:
                continue
    return result


# ---------------------------------------------------------------------------
# Binomials at roots of unity
# ---------------------------------------------------------------------------


def suite_binomials(ell: Optional[int] = None, m_max: int = 40) -> List[CheckResult]:
    """Vanishing and factorization of Gaussian binomials in A_l, plus sanity checks."""
    run = SuiteRun("binomials")
    ells = [ell] if ell else list(range(2, 8))
    for e in ells:
        for l in valid_ls(e):
            vanishing = [
                (m, k)
                for m in range(e, m_max + 1, e)
                for k in range(m + 1)
                if k % e and not reduce_mod(gauss_binomial(m, k), l).is_zero
            ]
            run.check(f"vanishing ell={e} l={l}", not vanishing, f"nonzero at {vanishing[:5]}")

            factor_fail = []
            for m in range(m_max + 1):
                m1, s = divmod(m, e)
                for k in range(m + 1):
                    k1, t = divmod(k, e)
                    exponent = e * (k1 * s - m1 * t) + (m1 + 1) * k1 * e * e
                    rhs = gauss_binomial(s, t).shift(exponent) * comb(m1, k1)
                    if reduce_mod(gauss_binomial(m, k), l) != reduce_mod(rhs, l):
                        factor_fail.append((m, k))
            run.check(f"factorization ell={e} l={l}", not factor_fail, f"mismatch at {factor_fail[:5]}")

            v2 = LaurentPoly.monomial(2)
            orders = [t for t in range(1, e) if reduce_mod(v2**t, l) == 1]
            run.check(
                f"root of unity ell={e} l={l}",
                reduce_mod(v2**l, l) == 1 and not orders,
                f"v^(2t) = 1 for t in {orders}",
            )
            run.attempt(f"epsilon ell={e} l={l}", lambda e=e, l=l: (epsilon(e, l) ** 2 == 1, ""))

    bar_fail = [(m, k) for m in range(min(m_max, 20) + 1) for k in range(m + 1)
                if gauss_binomial(m, k).bar() != gauss_binomial(m, k)]
    run.check("bar invariance", not bar_fail, f"at {bar_fail[:5]}")
    one_fail = [(m, k, d) for m in range(min(m_max, 20) + 1) for k in range(m + 1) for d in (1, 2, 3)
                if gauss_binomial(m, k, d).evaluate(1) != comb(m, k)]
    run.check("value at v = 1", not one_fail, f"at {one_fail[:5]}")
    return run.finish()


# ---------------------------------------------------------------------------
# Presentation relations
# ---------------------------------------------------------------------------


def monomial_word(mu: Weight, *factors: Tuple[str, int, int]) -> Tuple[GeneratorSymbol, ...]:
    """Word for factors (kind, i, a), written left to right, times 1_mu.

    Zero divided powers are dropped.
    """
    word = []
    w = mu
    for kind, i, a in reversed(factors):
        if a == 0:
            continue
        word.append(GeneratorSymbol(kind, w, i, a))
        w = w.shift_root(i, a if kind == "E" else -a)
    word.reverse()
    word.append(GeneratorSymbol.idempotent(mu))
    return tuple(word)


def _relation_sum(algebra: SchurAlgebra, terms: Iterable[Tuple[LaurentPoly, Tuple]]) -> SchurElement:
    out = algebra.zero()
    for coeff, word in terms:
        out = out + algebra.word_image(word).scale(algebra.spec(coeff))
    return out


def suite_presentation(n: int, r: int, spec: SpecializationMap = GENERIC) -> List[CheckResult]:
    """Defining relations of the modified quantum group on S(n, r) over ``spec``."""
    run = SuiteRun("presentation")
    table = load_or_build_table(n, r)
    algebra = SchurAlgebra(table, spec)
    label = spec.tag
    weights = realizable_weights(n, r)
    fails: Dict[str, List[str]] = {k: [] for k in ("commute", "ef", "fe", "weight", "divided", "product", "serre")}

    for mu in weights:
        for i in range(1, n):
            for j in range(1, n):
                for a in range(1, r + 1):
                    for b in range(1, r + 1):
                        if i != j:
                            lhs = algebra.word_image(monomial_word(mu, ("E", i, a), ("F", j, b)))
                            rhs = algebra.word_image(monomial_word(mu, ("F", j, b), ("E", i, a)))
                            if lhs != rhs:
                                fails["commute"].append(f"E{i}^({a})F{j}^({b})1_{mu}")
                            continue
                        pairing = mu.pairing(i)
                        lhs = algebra.word_image(monomial_word(mu, ("E", i, a), ("F", i, b)))
                        rhs = _relation_sum(algebra, (
                            (quantum_binomial(pairing + a - b, t), monomial_word(mu, ("F", i, b - t), ("E", i, a - t)))
                            for t in range(min(a, b) + 1)
                        ))
                        if lhs != rhs:
                            fails["ef"].append(f"E{i}^({a})F{i}^({b})1_{mu}")
                        lhs = algebra.word_image(monomial_word(mu, ("F", i, a), ("E", i, b)))
                        rhs = _relation_sum(algebra, (
                            (quantum_binomial(-pairing + a - b, t), monomial_word(mu, ("E", i, b - t), ("F", i, a - t)))
                            for t in range(min(a, b) + 1)
                        ))
                        if lhs != rhs:
                            fails["fe"].append(f"F{i}^({a})E{i}^({b})1_{mu}")

            for kind, sign in (("E", 1), ("F", -1)):
                g = GeneratorSymbol(kind, mu, i, 1)
                target = mu.shift_root(i, sign)
                with_left = algebra.word_image((GeneratorSymbol.idempotent(target), g))
                plain = algebra.word_image((g,))
                wrong = algebra.word_image((GeneratorSymbol.idempotent(mu), g))
                if with_left != plain or not wrong.is_zero:
                    fails["weight"].append(f"{kind}{i}1_{mu}")

                for a in range(1, r + 1):
                    for b in range(1, r - a + 1):
                        lhs = algebra.word_image(monomial_word(mu, (kind, i, a), (kind, i, b)))
                        rhs = algebra.word_image(monomial_word(mu, (kind, i, a + b))).scale(
                            spec(gauss_binomial(a + b, a))
                        )
                        if lhs != rhs:
                            fails["product"].append(f"{kind}{i}^({a}){kind}{i}^({b})1_{mu}")

                for a in range(2, r + 1):
                    power = algebra.word_image(monomial_word(mu, *([(kind, i, 1)] * a)))
                    divided = algebra.word_image(monomial_word(mu, (kind, i, a)))
                    if spec.kind == "generic":
                        try:
                            quotient_ok = SchurElement(
                                {A: exact_divide(c, quantum_factorial(a)) for A, c in power.coeffs.items()}
                            ) == divided
                        except NonDivisibleError:
                            quotient_ok = False
                    else:
                        quotient_ok = power == divided.scale(spec(quantum_factorial(a)))
                    if not quotient_ok:
                        fails["divided"].append(f"{kind}{i}^{a}1_{mu}")

            for j in range(1, n):
                if abs(i - j) != 1 or r < 2:
                    continue
                for kind in ("E", "F"):
                    total = (
                        algebra.word_image(monomial_word(mu, (kind, i, 2), (kind, j, 1)))
                        - algebra.word_image(monomial_word(mu, (kind, i, 1), (kind, j, 1), (kind, i, 1)))
                        + algebra.word_image(monomial_word(mu, (kind, j, 1), (kind, i, 2)))
                    )
                    if not total.is_zero:
                        fails["serre"].append(f"{kind} i={i} j={j} 1_{mu}")

    for name, bad in fails.items():
        if name == "serre" and n < 3:
            continue
        run.check(f"{name} relations S({n},{r}) over {label}", not bad, f"failing: {bad[:5]}")
    return run.finish()


# ---------------------------------------------------------------------------
# Counting oracle
# ---------------------------------------------------------------------------


def suite_oracle(
    n: int,
    r: int,
    q_list: Sequence[int] = (2, 3, 4, 5),
    samples: int = 200,
    seed: int = 0,
) -> List[CheckResult]:
    """Interpolated constants against brute-force middle-flag counts."""
    run = SuiteRun("oracle")
    table = load_or_build_table(n, r)
    algebra = SchurAlgebra(table)
    held_out = table.provenance.get("held_out", {}).get("q")
    q_check = sorted(set(q_list) | ({held_out} if held_out else set()))

    fast_fail, table_fail = [], []
    for key in sorted(table.ops):
        kind, i, a = parse_generator_key(key)
        for B in table.basis:
            G = generator_matrix(kind, i, a, B.row_sums)
            if G is None:
                continue
            row = table.apply(key, B)
            for C in with_marginals(G.row_sums, B.col_sums):
                N = row.get(C, LaurentPoly.zero()).shift(G.d + B.d - C.d)
                for q in q_check:
                    brute = count_middle(G, B, C, q)
                    if q in q_list and count_middle_generator(G, B, C, q) != brute:
                        fast_fail.append((key, B.key, C.key, q))
                    if N.evaluate_q(q) != brute:
                        table_fail.append((key, B.key, C.key, q))
    run.check(f"generator fast path S({n},{r})", not fast_fail, f"at {fast_fail[:5]}")
    run.check(f"generator constants incl. held-out q={held_out}", not table_fail, f"at {table_fail[:5]}")

    rng = np.random.default_rng(seed)
    twist_fail = []
    fq = get_field(q_list[0])
    for C in table.basis[:: max(1, len(table.basis) // 5)]:
        for B in (B for B in table.basis if B.col_sums == C.col_sums):
            G = generator_matrix("E", 1, 1, B.row_sums)
            if G is None or G.row_sums != C.row_sums:
                continue
            moved = twist(representative_pair(C, fq), rng)
            if moved.invariant != C or count_middle(G, B, C, fq.q, pair=moved) != count_middle(G, B, C, fq.q):
                twist_fail.append((B.key, C.key))
    run.check("counts independent of the orbit representative", not twist_fail, f"at {twist_fail[:5]}")

    if n == 2 and r <= 2 or n == 3 and r <= 1:
        product_fail = []
        for A in table.basis:
            for B in table.basis:
                if A.col_sums != B.row_sums:
                    continue
                brute = brute_oracle_product(A, B, q_list)
                ours = {C: [N.evaluate_q(q) for q in q_list] for C, N in algebra.orbit_constants(A, B).items()}
                ours = {C: v for C, v in ours.items() if any(v)}
                if ours != brute:
                    product_fail.append((A.key, B.key))
        run.check(f"all products against brute force S({n},{r})", not product_fail, f"at {product_fail[:5]}")

    ident = algebra.identity()
    id_fail = [
        B.key for B in table.basis
        if algebra.multiply(ident, algebra.basis_element(B)) != algebra.basis_element(B)
        or algebra.multiply(algebra.basis_element(B), ident) != algebra.basis_element(B)
    ]
    run.check("two-sided identity", not id_fail, f"at {id_fail[:5]}")

    by_rows: Dict[Tuple[int, ...], List[ThetaMatrix]] = {}
    for B in table.basis:
        by_rows.setdefault(B.row_sums, []).append(B)
    assoc_fail = []
    for _ in range(samples):
        A = table.basis[rng.integers(len(table.basis))]
        mids = by_rows[A.col_sums]
        B = mids[rng.integers(len(mids))]
        lasts = by_rows[B.col_sums]
        C = lasts[rng.integers(len(lasts))]
        x, y, z = (algebra.basis_element(M) for M in (A, B, C))
        if algebra.multiply(algebra.multiply(x, y), z) != algebra.multiply(x, algebra.multiply(y, z)):
            assoc_fail.append((A.key, B.key, C.key))
    run.check(f"associativity on {samples} triples", not assoc_fail, f"at {assoc_fail[:5]}")
    return run.finish()


# ---------------------------------------------------------------------------
# Frobenius and splitting
# ---------------------------------------------------------------------------


def _compatible_pairs(basis: Sequence[ThetaMatrix]) -> List[Tuple[ThetaMatrix, ThetaMatrix]]:
    return [(A, B) for A in basis for B in basis if A.col_sums == B.row_sums]


def suite_frobenius(n: int, r: int, ell: int, l: Optional[int] = None) -> List[CheckResult]:
    """Fr is a surjective homomorphism with the expected generator images."""
    run = SuiteRun("frobenius")
    pair = FrobeniusPair.build(n, r, ell, l or config.resolve_l(ell))
    src, star = pair.source, pair.star

    mult_fail = []
    for A, B in _compatible_pairs(src.basis):
        x, y = src.basis_element(A), src.basis_element(B)
        if pair.frobenius(src.multiply(x, y)) != star.multiply(pair.frobenius(x), pair.frobenius(y)):
            mult_fail.append((A.key, B.key))
    run.check(f"Fr multiplicative on S({n},{ell * r})", not mult_fail, f"at {mult_fail[:5]}")
    run.check("Fr surjective", pair.fr_rank() == len(star.basis), f"rank {pair.fr_rank()} of {len(star.basis)}")
    run.check(
        "kernel dimension",
        pair.fr_kernel_dim() == len(src.basis) - len(star.basis),
        f"dim ker Fr = {pair.fr_kernel_dim()}",
    )

    gen_fail = []
    for lam in realizable_weights(n, ell * r):
        mu = divide_weight(lam, ell)
        for i in range(1, n):
            for kind in ("E", "F"):
                for a in range(1, ell * r + 1):
                    image = pair.frobenius(src.psi(GeneratorSymbol(kind, lam, i, a)))
                    if a % ell == 0 and mu is not None:
                        expected = star.psi(GeneratorSymbol(kind, mu, i, a // ell))
                    else:
                        expected = star.zero()
                    if image != expected:
                        gen_fail.append(f"{kind}{i}^({a})1_{lam}")
        if mu is not None and mu.lift(r) is not None:
            D = ThetaMatrix.diagonal(mu.lift(r))
            if pair.frobenius(src.basis_element(D.scale(ell))) != star.basis_element(D):
                gen_fail.append(f"1_{lam}")
    run.check("generator images", not gen_fail, f"failing: {gen_fail[:5]}")
    return run.finish()


def suite_splitting(n: int, r: int, ell: int, l: Optional[int] = None) -> List[CheckResult]:
    """c is a triangular homomorphism and a right inverse of Fr."""
    run = SuiteRun("splitting")
    pair = FrobeniusPair.build(n, r, ell, l or config.resolve_l(ell))
    src, star = pair.source, pair.star
    run.check("epsilon squared", pair.epsilon ** 2 == 1, f"epsilon = {pair.epsilon}")

    for B in star.basis:
        run.attempt(f"leading term of c([{B.key}])", lambda B=B: (pair.splitting_basis(B) is not None, ""))

    def section() -> Tuple[bool, str]:
        bad = [
            B.key for B in star.basis
            if pair.frobenius(pair.splitting(star.basis_element(B))) != star.basis_element(B)
        ]
        return not bad, f"at {bad[:5]}"

    def multiplicative() -> Tuple[bool, str]:
        bad = []
        for B1, B2 in _compatible_pairs(star.basis):
            x, y = star.basis_element(B1), star.basis_element(B2)
            if pair.splitting(star.multiply(x, y)) != src.multiply(pair.splitting(x), pair.splitting(y)):
                bad.append((B1.key, B2.key))
        return not bad, f"at {bad[:5]}"

    def generators() -> Tuple[bool, str]:
        bad = []
        for mu in realizable_weights(n, r):
            for i in range(1, n):
                for kind in ("E", "F"):
                    for a in range(1, r + 1):
                        g = GeneratorSymbol(kind, mu, i, a)
                        if pair.splitting(star.psi(g)) != src.psi(g.scale(ell)):
                            bad.append(str(g))
        return not bad, f"failing: {bad[:5]}"

    run.attempt("Fr after c is the identity", section)
    run.attempt("c multiplicative", multiplicative)
    run.attempt("generator compatibility", generators)
    return run.finish()


def suite_fm(r: int, p: int) -> List[CheckResult]:
    """c at v = 1 over F_p against the Fayers-Martin formula."""
    run = SuiteRun("fm")

    def compare() -> Tuple[bool, str]:
        report = compare_with_fm(r, p)
        return report["passed"], f"{report['checked']} checked, mismatches {report['mismatches'][:3]}"

    run.attempt(f"Fayers-Martin S(2,{r}) p={p}", compare)
    return run.finish()


# ---------------------------------------------------------------------------
# Generalized q-Schur algebras
# ---------------------------------------------------------------------------


def suite_gschur(n: int, r: int, ell: int, l: Optional[int] = None) -> List[CheckResult]:
    """Weyl modules, ideals, annihilators and quotients on S(n, r)."""
    run = SuiteRun("gschur")
    l = l or config.resolve_l(ell)
    algebra = SchurAlgebra(load_or_build_table(n, r))
    generic = Domain.generic()
    cyclo = Domain.cyclotomic(ell, l)

    dims = {}
    for lam in dominant_weights(n, r):
        module = weyl_module(lam, algebra, generic)
        dims[lam] = module.dim
        run.check(
            f"weight spaces of Weyl {lam}",
            sum(module.multiplicities.values()) == module.dim,
            f"multiplicities {module.multiplicities}",
        )
        hw = module.highest_weight_vector()
        killed = all(
            not module.reduce(module.actions.left_generator(f"E{i}^(1)", hw)) for i in range(1, n)
        )
        run.check(f"highest weight vector of Weyl {lam}", bool(hw) and killed)
        run.attempt(
            f"Weyl {lam} dimension at ell={ell}",
            lambda lam=lam: (weyl_module(lam, algebra, cyclo).dim == dims[lam], ""),
        )
    total = sum(d * d for d in dims.values())
    run.check("sum of squared Weyl dimensions", total == len(algebra.basis), f"{total} vs {len(algebra.basis)}")

    for P in saturated_sets(n, r):
        label = f"P complement {P.lifted_complement(r)}"
        ideal = ideal_generated(P, algebra, generic)
        run.attempt(f"annihilator {label} generic", lambda P=P, ideal=ideal: (annihilator_check(P, algebra, generic, ideal), ""))
        run.attempt(f"annihilator {label} at ell={ell}", lambda P=P: (annihilator_check(P, algebra, cyclo), ""))

        def quotient_checks(P=P, ideal=ideal) -> Tuple[bool, str]:
            U = quotient(P, algebra, generic, ideal)
            one = U.identity()
            bad = [
                A.key for A in U.basis
                if U.multiply(one, U.project(U.section(A))) != U.project(U.section(A))
                or U.multiply(U.project(U.section(A)), one) != U.project(U.section(A))
            ]
            k_zero = cartan_image(U, (0,) * n) == one
            return not bad and k_zero, f"dim U_P = {U.dim}, identity fails at {bad[:5]}"

        run.attempt(f"quotient {label}", quotient_checks)
    return run.finish()


def suite_embed(n: int, r: int, ell: int, l: Optional[int] = None) -> List[CheckResult]:
    """Descent of Fr and c to every generalized q-Schur quotient of S(n, ell r)."""
    run = SuiteRun("embed")
    pair = FrobeniusPair.build(n, r, ell, l or config.resolve_l(ell))
    sets = saturated_sets(n, ell * r)
    for P in sets:
        label = f"P complement {P.lifted_complement(ell * r)}"
        try:
            report = descend_maps(pair, P).report
        except (DescentError, AssertionError, ValueError) as e:
            run.check(f"descent {label}", False, f"{type(e).__name__}: {e}")
            continue
        for name, passed in report["checks"].items():
            run.check(f"{name} {label}", passed, f"dims {report['dims']}")

    def nested(P: SaturatedSet, P_prime: SaturatedSet) -> Tuple[bool, str]:
        result = filtration_check(pair, P, P_prime)
        return all(result.values()), str(result)

    for P in sets:
        for P_prime in sets:
            if P == P_prime or not P.is_subset(P_prime):
                continue
            label = f"{P.lifted_complement(ell * r)} in {P_prime.lifted_complement(ell * r)}"
            run.attempt(f"filtration {label}", lambda P=P, Q=P_prime: nested(P, Q))
    return run.finish()


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------


def run_suite(
    name: str,
    n: int,
    r: int,
    ell: int,
    l: Optional[int] = None,
    p: Optional[int] = None,
) -> List[CheckResult]:
    """Run one suite (or ``all``) with the given parameters.

    Raises:
        ValueError: on an unknown suite name
    """
    p = p or config.p
    l = l or config.resolve_l(ell)
    runners: Dict[str, Callable[[], List[CheckResult]]] = {
        "binomials": lambda: suite_binomials(ell if name != "all" else None),
        "presentation": lambda: suite_presentation(n, r)
        + suite_presentation(n, r, SpecializationMap.star(ell, l)),
        "oracle": lambda: suite_oracle(n, r),
        "frobenius": lambda: suite_frobenius(n, r, ell, l),
        "splitting": lambda: suite_splitting(n, r, ell, l),
        "fm": lambda: suite_fm(r, p),
        "gschur": lambda: suite_gschur(n, r, ell, l),
        "embed": lambda: suite_embed(n, r, ell, l),
    }
    if name == "all":
        results: List[CheckResult] = []
        for suite in SUITE_NAMES:
            results.extend(runners[suite]())
        return results
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)} or all")
    return runners[name]()
