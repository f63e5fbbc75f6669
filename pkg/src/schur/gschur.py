"""Weyl modules, idempotent ideals and generalized q-Schur quotients.

Everything here is exact linear algebra over a field (see
:class:`~src.algebra.fields.Domain`) on coordinate vectors in the [A] basis
of S(n, r).  For a saturated set P of dominant weights:

- I_P is the two-sided ideal generated by the idempotents 1_nu, nu in P.
- U_P = S / I_P realizes the generalized q-Schur algebra, as long as P
  contains every dominant weight that S(n, r) cannot see.
- The Weyl module of highest weight lambda is S 1_lambda modulo the
  submodule generated by the E_i^(a) 1_lambda, a > 0, and the
  F_i^(a) 1_lambda, a > <i, lambda>.

:func:`descend_maps` pushes Fr and c through these quotients.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..algebra.cartan import (
    SaturatedSet,
    Weight,
    WeightError,
    dominant_weights,
    realizable_weights,
)
from ..algebra.fields import Domain
from ..algebra.laurent import LaurentPoly
from ..algebra.linalg import EchelonSpace, Vector, axpy, kernel, rank
from .algebra import GeneratorSymbol, SchurAlgebra
from .frob import FrobeniusPair, frobenius_basis
from .theta import ThetaMatrix, generator_matrix, parse_generator_key, with_marginals

logger = logging.getLogger(__name__)


class RealizabilityError(ValueError):
    """P leaves out a dominant weight that has no idempotent in S(n, r)."""


class DescentError(AssertionError):
    """Fr or c does not respect the ideals, or the descended maps fail their checks."""


# ---------------------------------------------------------------------------
# Coordinate actions over a domain
# ---------------------------------------------------------------------------


class _Actions:
    """Left and right multiplication on coordinate vectors over ``domain``."""

    def __init__(self, algebra: SchurAlgebra, domain: Domain) -> None:
        self.algebra = algebra
        self.domain = domain
        self.field = domain.field
        self.keys = sorted(algebra.table.ops)
        self._coerced: Dict[Tuple[ThetaMatrix, ThetaMatrix], Vector] = {}

    def product(self, A: ThetaMatrix, B: ThetaMatrix) -> Vector:
        """[A][B] over the domain."""
        key = (A, B)
        if key not in self._coerced:
            self._coerced[key] = {
                C: self.domain.coerce(c) for C, c in self.algebra.basis_product(A, B).items()
            }
        return self._coerced[key]

    def left_generator(self, key: str, vec: Vector) -> Vector:
        out: Vector = {}
        for B, x in vec.items():
            row = self.algebra.table.apply(key, B)
            if row:
                out = axpy(self.field, out, x, {C: self.domain.coerce(c) for C, c in row.items()})
        return out

    def left(self, A: ThetaMatrix, vec: Vector) -> Vector:
        out: Vector = {}
        for B, x in vec.items():
            out = axpy(self.field, out, x, self.product(A, B))
        return out

    def right(self, vec: Vector, A: ThetaMatrix) -> Vector:
        out: Vector = {}
        for B, x in vec.items():
            out = axpy(self.field, out, x, self.product(B, A))
        return out

    def generator_matrices(self) -> List[ThetaMatrix]:
        weights = sorted({B.row_sums for B in self.algebra.basis})
        mats = []
        for key in self.keys:
            kind, i, a = parse_generator_key(key)
            mats.extend(G for lam in weights if (G := generator_matrix(kind, i, a, lam)) is not None)
        return mats


def _row_components(vec: Vector) -> List[Vector]:
    parts: Dict[Tuple[int, ...], Vector] = {}
    for A, c in vec.items():
        parts.setdefault(A.row_sums, {})[A] = c
    return [parts[k] for k in sorted(parts)]


def _left_closure(actions: _Actions, seeds: Iterable[Vector]) -> EchelonSpace:
    """Smallest subspace containing ``seeds`` and stable under S from the left."""
    space = EchelonSpace(actions.field)
    queue: List[Vector] = []

    def push(vec: Vector) -> None:
        for part in _row_components(vec):
            if space.add(part):
                queue.append(part)

    for seed in seeds:
        push(seed)
    while queue:
        vec = queue.pop()
        for key in actions.keys:
            push(actions.left_generator(key, vec))
    return space


def _unit(actions: _Actions, A: ThetaMatrix) -> Vector:
    return {A: actions.field.one}


def _realizable_dominant(n: int, r: int) -> List[Weight]:
    return dominant_weights(n, r)


def _check_realizable(P: SaturatedSet, n: int, r: int) -> None:
    for w in P.complement:
        if (r - w.degree) % n == 0 and w.degree > r:
            raise RealizabilityError(
                f"{w} lies outside P but has no idempotent in S(n={n}, r={r}); "
                f"the quotient is not realized inside the Schur algebra"
            )


# ---------------------------------------------------------------------------
# Weyl modules
# ---------------------------------------------------------------------------


@dataclass
class WeylModule:
    """S 1_lambda / N_lambda with the quotient basis given by non-pivot matrices."""

    weight: Weight
    domain: Domain
    submodule: EchelonSpace
    basis: List[ThetaMatrix]
    actions: _Actions = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def multiplicities(self) -> Dict[Tuple[int, ...], int]:
        """Weight-space dimensions, weights written as lifts."""
        return dict(sorted(Counter(A.row_sums for A in self.basis).items(), reverse=True))

    def reduce(self, vec: Vector) -> Vector:
        return self.submodule.reduce(vec)

    def highest_weight_vector(self) -> Vector:
        D = ThetaMatrix.diagonal(self.weight.lift(self.actions.algebra.r))
        return self.reduce(_unit(self.actions, D))

    def act(self, A: ThetaMatrix, vec: Vector) -> Vector:
        """[A] acting on a module vector, in quotient normal form."""
        return self.reduce(self.actions.left(A, vec))

    def action_matrix(self, key: str) -> Dict[ThetaMatrix, Vector]:
        """Generator ``key`` on the quotient basis."""
        return {
            A: self.reduce(self.actions.left_generator(key, _unit(self.actions, A)))
            for A in self.basis
        }


def weyl_module(lam: Weight, algebra: SchurAlgebra, domain: Domain) -> WeylModule:
    """The Weyl module of highest weight ``lam`` over ``domain``.

    At a root of unity E_i 1_lambda does not generate the divided powers, so the
    submodule is rebuilt over ``domain`` from every divided-power seed rather
    than specialized from Q(v). The dimension must equal the generic one.

    Raises:
        WeightError: if lam is not dominant
        RealizabilityError: if lam has no idempotent in S(n, r)
    """
    if not lam.is_dominant():
        raise WeightError(f"{lam} is not dominant")
    lift = lam.lift(algebra.r)
    if lift is None:
        raise RealizabilityError(f"{lam} is not realizable in S(n={algebra.n}, r={algebra.r})")
    actions = _Actions(algebra, domain)
    # every divided power; E_i 1_lambda alone does not generate them at a root of unity
    seeds = []
    for i in range(1, lam.n):
        powers = [("E", a) for a in range(1, algebra.r + 1)]
        powers += [("F", a) for a in range(lam.pairing(i) + 1, algebra.r + 1)]
        for kind, a in powers:
            G = GeneratorSymbol(kind, lam, i, a).matrix(algebra.r)
            if G is not None:
                seeds.append(_unit(actions, G))
    submodule = _left_closure(actions, seeds)
    cyclic = [A for A in algebra.basis if A.col_sums == lift]
    basis = [A for A in cyclic if A not in submodule.rows]
    logger.debug(f"Weyl module {lam} over {domain.name}: dim {len(basis)}")
    return WeylModule(lam, domain, submodule, basis, actions)


# ---------------------------------------------------------------------------
# Ideals and annihilators
# ---------------------------------------------------------------------------


@dataclass
class IdealSubspace:
    """I_P inside S(n, r), echelonized in the [A] basis."""

    P: SaturatedSet
    domain: Domain
    space: EchelonSpace
    seeds: List[Weight]

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, vec: Vector) -> bool:
        return self.space.contains(vec)


def ideal_generated(
    P: SaturatedSet,
    algebra: SchurAlgebra,
    domain: Domain,
    check_closure: bool = True,
) -> IdealSubspace:
    """I_P = S {1_nu : nu in P} S.

    1_nu S is spanned by the [B] with row(B) = nu, so I_P is the left closure
    of those basis vectors.

    Raises:
        RealizabilityError: if P leaves out an unrealizable dominant weight
        AssertionError: if the result is not closed under right multiplication
    """
    _check_realizable(P, algebra.n, algebra.r)
    actions = _Actions(algebra, domain)
    seeds = [nu for nu in _realizable_dominant(algebra.n, algebra.r) if nu in P]
    lifts = {nu.lift(algebra.r) for nu in seeds}
    space = _left_closure(actions, (_unit(actions, B) for B in algebra.basis if B.row_sums in lifts))
    if check_closure:
        generators = actions.generator_matrices()
        for vec in space.basis():
            for G in generators:
                if not space.contains(actions.right(vec, G)):
                    raise AssertionError(f"I_P is not closed under right multiplication by [{G}]")
    logger.info(
        f"I_P over {domain.name} for complement {[str(w) for w in sorted(P.complement)]}: dim {space.dim}"
    )
    return IdealSubspace(P, domain, space, seeds)


def annihilator(
    weights: Sequence[Weight],
    algebra: SchurAlgebra,
    domain: Domain,
) -> EchelonSpace:
    """Ann of the direct sum of the Weyl modules with the given highest weights.

    Solved block by block: 1_mu x 1_nu kills the sum iff it kills every
    nu-weight vector of every module.
    """
    modules = [weyl_module(lam, algebra, domain) for lam in weights]
    actions = _Actions(algebra, domain)
    marginals = sorted({A.row_sums for A in algebra.basis})
    result = EchelonSpace(domain.field)
    for mu in marginals:
        for nu in marginals:
            block = with_marginals(mu, nu)
            if not block:
                continue
            columns = []
            for A in block:
                image: Vector = {}
                for idx, module in enumerate(modules):
                    for Bm in module.basis:
                        if Bm.row_sums != nu:
                            continue
                        for C, c in module.act(A, _unit(actions, Bm)).items():
                            image[(idx, Bm, C)] = c
                columns.append((A, image))
            for vec in kernel(domain.field, columns):
                result.add(vec)
    return result


def annihilator_check(
    P: SaturatedSet,
    algebra: SchurAlgebra,
    domain: Domain,
    ideal: Optional[IdealSubspace] = None,
) -> bool:
    """Compare I_P with the annihilator of the Weyl modules outside P.

    Over Q(v) the two coincide.  At a root of unity the annihilator can be
    larger; there I_P must lie inside it and keep its generic dimension.
    """
    ideal = ideal or ideal_generated(P, algebra, domain)
    outside = [lam for lam in _realizable_dominant(algebra.n, algebra.r) if lam not in P]
    ann = annihilator(outside, algebra, domain)
    if domain.is_generic:
        verdict = ann == ideal.space
    else:
        generic_dim = ideal_generated(P, algebra, Domain.generic(), check_closure=False).dim
        verdict = ann.contains_space(ideal.space) and ideal.dim == generic_dim
    logger.info(f"Ideal/annihilator check over {domain.name}: dim I_P={ideal.dim}, dim Ann={ann.dim}, {verdict}")
    return verdict


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


@dataclass
class QuotientAlgebra:
    """U_P = S / I_P, with basis the matrices that are not pivots of I_P."""

    P: SaturatedSet
    algebra: SchurAlgebra
    domain: Domain
    ideal: IdealSubspace
    basis: List[ThetaMatrix]
    actions: _Actions = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, vec: Vector) -> Vector:
        return self.ideal.space.reduce(vec)

    def section(self, A: ThetaMatrix) -> Vector:
        return _unit(self.actions, A)

    def multiply(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for A, c in x.items():
            out = axpy(self.domain.field, out, c, self.actions.left(A, y))
        return self.project(out)

    def identity(self) -> Vector:
        one = self.domain.field.one
        return self.project({ThetaMatrix.diagonal(nu.lift(self.algebra.r)): one for nu in omega_weights(self)})


def omega_weights(quotient: QuotientAlgebra) -> List[Weight]:
    """Weights nu of S(n, r) whose idempotent survives in U_P."""
    r = quotient.algebra.r
    return [
        nu for nu in realizable_weights(quotient.algebra.n, r)
        if not quotient.ideal.contains({ThetaMatrix.diagonal(nu.lift(r)): quotient.domain.field.one})
    ]


def cartan_image(quotient: QuotientAlgebra, mu: Sequence[int]) -> Vector:
    """Image of K_mu in U_P: sum over Omega_P of v^<mu, lambda> 1_lambda.

    Raises:
        WeightError: unless mu has entry sum 0 (a coweight of X)
    """
    if len(mu) != quotient.algebra.n or sum(mu) != 0:
        raise WeightError(f"coweight {tuple(mu)} must have {quotient.algebra.n} entries summing to 0")
    r = quotient.algebra.r
    vec = {}
    for nu in omega_weights(quotient):
        lift = nu.lift(r)
        exponent = sum(m * x for m, x in zip(mu, lift))
        vec[ThetaMatrix.diagonal(lift)] = quotient.domain.coerce(LaurentPoly.monomial(exponent))
    return quotient.project(vec)


def quotient(
    P: SaturatedSet,
    algebra: SchurAlgebra,
    domain: Domain,
    ideal: Optional[IdealSubspace] = None,
) -> QuotientAlgebra:
    """U_P over ``domain``.

    Over Q(v) the dimension is asserted to be the sum of (dim Weyl)^2 over the
    realizable dominant weights outside P.
    """
    ideal = ideal or ideal_generated(P, algebra, domain)
    actions = _Actions(algebra, domain)
    basis = [A for A in algebra.basis if A not in ideal.space.rows]
    result = QuotientAlgebra(P, algebra, domain, ideal, basis, actions)
    if domain.is_generic:
        outside = [lam for lam in _realizable_dominant(algebra.n, algebra.r) if lam not in P]
        expected = sum(weyl_module(lam, algebra, domain).dim ** 2 for lam in outside)
        assert result.dim == expected, f"dim U_P = {result.dim}, block sum {expected}"
    logger.info(f"U_P over {domain.name}: dim {result.dim}")
    return result


# ---------------------------------------------------------------------------
# Descent of Fr and c
# ---------------------------------------------------------------------------


def star_saturated(P: SaturatedSet, ell: int, r: int) -> SaturatedSet:
    """P* = P meet ell X, carried to the star algebra: complement {mu : ell mu not in P}."""
    complement = [mu for mu in dominant_weights(P.n, r) if mu.scale(ell) not in P]
    return SaturatedSet(P.n, frozenset(complement))


@dataclass
class Descent:
    """The quotient maps c_P: U_P* -> U_P and Fr_P: U_P -> U_P*."""

    pair: FrobeniusPair
    source: QuotientAlgebra
    star: QuotientAlgebra
    c_images: Dict[ThetaMatrix, Vector]
    fr_images: Dict[ThetaMatrix, Vector]
    report: Dict


def _splitting_vector(pair: FrobeniusPair, domain: Domain, vec: Vector) -> Vector:
    out: Vector = {}
    for B, y in vec.items():
        image = {C: domain.field.from_cyclo(c) for C, c in pair.splitting_basis(B).coeffs.items()}
        out = axpy(domain.field, out, y, image)
    return out


def _frobenius_vector(pair: FrobeniusPair, domain: Domain, vec: Vector) -> Vector:
    out: Vector = {}
    for A, x in vec.items():
        B = frobenius_basis(A, pair.ell)
        if B is not None:
            out = axpy(domain.field, out, x, {B: domain.field.one})
    return out


def descend_maps(pair: FrobeniusPair, P: SaturatedSet) -> Descent:
    """Induce c and Fr on U_P* and U_P and check them.

    Raises:
        DescentError: if c(I_P*) is not inside I_P, Fr(I_P) is not I_P*, or
            the induced maps are not injective / surjective / split
    """
    src_domain = Domain.cyclotomic(pair.ell, pair.l)
    star_domain = Domain.star(pair.ell, pair.l)
    P_star = star_saturated(P, pair.ell, pair.star.r)

    ideal = ideal_generated(P, pair.source, src_domain)
    ideal_star = ideal_generated(P_star, pair.star, star_domain)

    for vec in ideal_star.space.basis():
        if not ideal.contains(_splitting_vector(pair, src_domain, vec)):
            raise DescentError(f"c does not map I_P* into I_P (vector {vec})")
    fr_ideal = EchelonSpace(star_domain.field, (_frobenius_vector(pair, src_domain, v) for v in ideal.space.basis()))
    if not fr_ideal == ideal_star.space:
        raise DescentError(f"Fr(I_P) has dim {fr_ideal.dim}, I_P* has dim {ideal_star.dim}")

    U = quotient(P, pair.source, src_domain, ideal)
    U_star = quotient(P_star, pair.star, star_domain, ideal_star)

    c_images = {B: U.project(_splitting_vector(pair, src_domain, U_star.section(B))) for B in U_star.basis}
    fr_images = {A: U_star.project(_frobenius_vector(pair, src_domain, U.section(A))) for A in U.basis}

    injective = rank(src_domain.field, c_images.values()) == U_star.dim
    surjective = rank(star_domain.field, fr_images.values()) == U_star.dim
    split = all(
        U_star.project(_frobenius_vector(pair, src_domain, c_images[B])) == U_star.section(B)
        for B in U_star.basis
    )
    if not (injective and surjective and split):
        raise DescentError(f"descended maps failed: injective={injective}, surjective={surjective}, Fr_P c_P = id: {split}")

    prop = annihilator_check(P, pair.source, src_domain, ideal)
    report = {
        "P_complement": P.lifted_complement(pair.source.r),
        "dims": {"S": len(pair.source.basis), "I_P": ideal.dim, "U_P": U.dim},
        "checks": {"prop_qschur": prop, "embed": injective and split, "fr_surjective": surjective},
    }
    logger.info(f"Descent for P complement {report['P_complement']}: {report['checks']}")
    return Descent(pair, U, U_star, c_images, fr_images, report)


def filtration_check(pair: FrobeniusPair, P: SaturatedSet, P_prime: SaturatedSet) -> Dict[str, bool]:
    """For P inside P', I_P lies in I_P' and the descended maps commute with U_P -> U_P'."""
    if not P.is_subset(P_prime):
        raise WeightError("filtration_check needs P contained in P'")
    small = descend_maps(pair, P)
    large = descend_maps(pair, P_prime)
    nested = large.source.ideal.space.contains_space(small.source.ideal.space)
    nested_star = large.star.ideal.space.contains_space(small.star.ideal.space)
    c_commutes = all(
        large.source.project(small.c_images[B]) == large.source.project(
            _splitting_vector(pair, Domain.cyclotomic(pair.ell, pair.l), large.star.project(small.star.section(B)))
        )
        for B in small.star.basis
    )
    fr_commutes = all(
        large.star.project(small.fr_images[A]) == large.star.project(
            _frobenius_vector(pair, Domain.cyclotomic(pair.ell, pair.l), large.source.project(small.source.section(A)))
        )
        for A in small.source.basis
    )
    return {"ideals_nested": nested and nested_star, "c_commutes": c_commutes, "fr_commutes": fr_commutes}
