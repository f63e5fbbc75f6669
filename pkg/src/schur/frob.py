"""Quantum Frobenius Fr and its splitting c between q-Schur algebras.

The source is S(n, ell r) over A_l; the star algebra is S(n, r) read over
the same ring with v acting as epsilon = v^(ell^2) (a sign in A_l).  Weights
of the star algebra are identified with ell-multiples, lambda <-> ell lambda.

- Fr([A]) = [A / ell] when ell divides every entry of A, else 0.
- c is determined by e_i^(a) 1_mu -> E_i^(a ell) 1_(ell mu) and is computed
  through the monomial of each star basis element, so that
  c([B]) = [ell B] + terms strictly below ell B.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import sympy

from ..algebra.cartan import Weight, in_Xstar
from ..algebra.laurent import CycloElem, SpecializationMap, default_l, prime_field
from ..config import config
from .algebra import LeadingTermError, SchurAlgebra, SchurElement
from .table import StructureTable, load_or_build_table
from .theta import ThetaMatrix, order_lt, theta_enumerate

logger = logging.getLogger(__name__)


class DomainError(TypeError):
    """Fr or c requested on coefficients outside A_l."""


class FayersMartinError(ValueError):
    """The Fayers-Martin embedding is only defined for n = 2."""


def frobenius_basis(A: ThetaMatrix, ell: int) -> Optional[ThetaMatrix]:
    """[A / ell] when every entry of A is divisible by ell, else None (zero).

    The marginals of a divisible A are weights in X*, matching
    lambda <-> ell lambda.
    """
    B = A.divide(ell)
    if B is not None:
        for lam in (Weight(A.row_sums), Weight(A.col_sums)):
            assert in_Xstar(lam, ell), f"marginal {lam} of {A} is not in X* for ell={ell}"
    return B


@dataclass
class FrobeniusPair:
    """Fr: S(n, ell r) -> S*(n, r) and its right inverse c, both over A_l."""

    source: SchurAlgebra
    star: SchurAlgebra
    ell: int
    l: int
    _splitting: Dict[ThetaMatrix, SchurElement] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.source.n != self.star.n or self.source.r != self.ell * self.star.r:
            raise ValueError(
                f"source S({self.source.n},{self.source.r}) does not match "
                f"star S({self.star.n},{self.star.r}) for ell={self.ell}"
            )
        if self.source.spec.kind != "cyclotomic" or self.star.spec.kind != "star":
            raise DomainError("FrobeniusPair needs a cyclotomic source and a star target")
        if (self.source.spec.l, self.star.spec.l) != (self.l, self.l):
            raise DomainError(f"source and star must both be read over A_{self.l}")

    @classmethod
    def from_tables(
        cls,
        source_table: StructureTable,
        star_table: StructureTable,
        ell: int,
        l: Optional[int] = None,
    ) -> "FrobeniusPair":
        l = l or default_l(ell)
        return cls(
            SchurAlgebra(source_table, SpecializationMap.cyclotomic(ell, l)),
            SchurAlgebra(star_table, SpecializationMap.star(ell, l)),
            ell,
            l,
        )

    @classmethod
    def build(
        cls,
        n: int,
        r: int,
        ell: int,
        l: Optional[int] = None,
        force: bool = False,
    ) -> "FrobeniusPair":
        """Load (or build) both tables from the cache."""
        l = l or config.resolve_l(ell)
        source = load_or_build_table(n, ell * r, force=force)
        star = source if ell == 1 else load_or_build_table(n, r, force=force)
        return cls.from_tables(source, star, ell, l)

    @property
    def tag(self) -> str:
        return self.source.tag

    @property
    def epsilon(self) -> int:
        """The image of v^(ell^2) in A_l; its square is 1."""
        eps = self.star.spec.epsilon
        assert eps * eps == 1
        return eps

    def _check_tag(self, x: SchurElement) -> None:
        if x.tag != self.tag:
            raise DomainError(f"Fr and c are defined over A_{self.l} ({self.tag}), got {x.tag} coefficients")

    # -- Fr ----------------------------------------------------------------

    def frobenius(self, x: SchurElement) -> SchurElement:
        self._check_tag(x)
        out: Dict[ThetaMatrix, Any] = {}
        for A, c in x.coeffs.items():
            B = frobenius_basis(A, self.ell)
            if B is not None:
                out[B] = out[B] + c if B in out else c
        return SchurElement(out, self.tag)

    def fr_rank(self) -> int:
        """Number of basis elements hit by Fr (its rank, the images being basis vectors)."""
        return len({B for A in self.source.basis if (B := frobenius_basis(A, self.ell)) is not None})

    def fr_kernel_dim(self) -> int:
        return len(self.source.basis) - self.fr_rank()

    # -- c -----------------------------------------------------------------

    def splitting_basis(self, B: ThetaMatrix) -> SchurElement:
        """c([B]) for a basis element of the star algebra.

        Raises:
            LeadingTermError: unless c([B]) = [ell B] + terms below ell B
        """
        if B in self._splitting:
            return self._splitting[B]
        word, correction = self.star.monomial_for(B)
        image = self.source.word_image([g.scale(self.ell) for g in word])
        for C, coeff in correction.coeffs.items():
            image = image - self.splitting_basis(C).scale(self.star.spec(coeff))
        lead_matrix = B.scale(self.ell)
        lead = image.coefficient(lead_matrix, CycloElem.zero(self.l))
        if lead != 1:
            raise LeadingTermError(f"c([{B}]) has leading coefficient {lead} at {lead_matrix}")
        bad = [C for C in image.coeffs if C != lead_matrix and not order_lt(C, lead_matrix)]
        if bad:
            raise LeadingTermError(f"c([{B}]) has terms not below {lead_matrix}: {[str(C) for C in bad]}")
        self._splitting[B] = image
        return image

    def splitting(self, x: SchurElement) -> SchurElement:
        self._check_tag(x)
        out = self.source.zero()
        for B, c in x.coeffs.items():
            out = out + self.splitting_basis(B).scale(c)
        return out

    def splitting_constants(self) -> Dict[ThetaMatrix, Dict[ThetaMatrix, CycloElem]]:
        """Lower-term coefficients of c([B]) for every star basis element B."""
        result = {}
        for B in self.star.basis:
            lead = B.scale(self.ell)
            result[B] = {C: c for C, c in self.splitting_basis(B).coeffs.items() if C != lead}
        return result

    # -- export --------------------------------------------------------------

    def export(self, kind: str) -> Dict:
        """Sparse matrix of Fr or c in the [A] bases, JSON-ready.

        Columns are keyed by the domain basis, rows by the codomain basis;
        coefficients use the Laurent encoding of their reduced representative.
        """
        if kind == "fr":
            matrix = {}
            for A in self.source.basis:
                B = frobenius_basis(A, self.ell)
                if B is not None:
                    matrix[A.key] = {B.key: CycloElem.one(self.l).to_laurent().to_json()}
            extra = {}
        elif kind == "c":
            matrix = {
                B.key: {
                    C.key: c.to_laurent().to_json()
                    for C, c in sorted(self.splitting_basis(B).coeffs.items())
                }
                for B in self.star.basis
            }
            extra = {"leading_terms": {B.key: B.scale(self.ell).key for B in self.star.basis}}
        else:
            raise ValueError(f"unknown map kind {kind!r} (expected 'fr' or 'c')")
        return {
            "kind": kind,
            "n": self.star.n,
            "r": self.star.r,
            "ell": self.ell,
            "l": self.l,
            "epsilon": self.epsilon,
            "matrix": matrix,
            **extra,
        }


def frobenius_map(pair: FrobeniusPair, x: SchurElement) -> SchurElement:
    return pair.frobenius(x)


def splitting_map(pair: FrobeniusPair, x: SchurElement) -> SchurElement:
    return pair.splitting(x)


def splitting_constants(pair: FrobeniusPair) -> Dict[ThetaMatrix, Dict[ThetaMatrix, CycloElem]]:
    return pair.splitting_constants()


# ---------------------------------------------------------------------------
# Fayers-Martin comparison
# ---------------------------------------------------------------------------


def fayers_martin_image(A: ThetaMatrix, p: int) -> SchurElement:
    """The Fayers-Martin image of [A] in S(2, p r) over F_p.

    [a b; c d] goes to [pa pb; pc pd] when b or c vanishes, otherwise to
    the sum over e = 0..p-1 of [pa+e, pb-e; pc-e, pd+e].

    Raises:
        FayersMartinError: if A is not 2 x 2
    """
    if A.n != 2:
        raise FayersMartinError(f"Fayers-Martin images are defined for n = 2, got n = {A.n}")
    if not sympy.isprime(p):
        raise ValueError(f"p must be prime, got {p}")
    one = prime_field(p)(1)
    (a, b), (c, d) = A.entries
    if b == 0 or c == 0:
        terms = [A.scale(p)]
    else:
        terms = [
            ThetaMatrix.of([[p * a + e, p * b - e], [p * c - e, p * d + e]])
            for e in range(p)
        ]
    return SchurElement({T: one for T in terms}, f"prime:{p}")


def reduce_to_prime(x: SchurElement, p: int) -> SchurElement:
    """v -> 1 from A_l into F_p."""
    gf = prime_field(p)
    return SchurElement({A: gf(c.evaluate_at_one(p)) for A, c in x.coeffs.items()}, f"prime:{p}")


def fm_l(p: int) -> int:
    """Cyclotomic index for the F_p comparison: the default l for ell = p."""
    return default_l(p)


def compare_with_fm(r: int, p: int, pair: Optional[FrobeniusPair] = None) -> Dict:
    """Check that c specialized at v -> 1 into F_p is the Fayers-Martin map.

    Returns:
        Report with the number of basis elements checked and any mismatches
    """
    config.validate_run(2, r, ell=p, p=p, fm=True)
    pair = pair or FrobeniusPair.build(2, r, p, fm_l(p))
    if pair.star.n != 2:
        raise FayersMartinError("Fayers-Martin comparison requires n = 2")
    mismatches: List[Dict] = []
    basis = theta_enumerate(2, r)
    for B in basis:
        ours = reduce_to_prime(pair.splitting_basis(B), p)
        theirs = fayers_martin_image(B, p)
        if ours != theirs:
            mismatches.append({"B": B.key, "computed": str(ours), "fayers_martin": str(theirs)})
            logger.warning(f"FM mismatch at {B}: {ours} vs {theirs}")
    return {
        "r": r,
        "p": p,
        "l": pair.l,
        "checked": len(basis),
        "mismatches": mismatches,
        "passed": not mismatches,
    }
