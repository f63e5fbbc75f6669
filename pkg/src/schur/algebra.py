"""The q-Schur algebra S_v(n, r) in its left-regular model.

Only generator structure constants are counted (see :mod:`table`).  Every
basis element [A] is reached through a monomial in divided powers whose image
is [A] plus terms strictly below A in the closure order; subtracting those
terms recursively gives [A][B] for arbitrary A and B by exact arithmetic over
Z[v, v^-1].  Products over a specialized ring are the specialized generic
products.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ..algebra.cartan import Weight
from ..algebra.laurent import GENERIC, LaurentPoly, SpecializationMap
from ..geometry.flaggeom import count_middle
from .table import StructureTable
from .theta import ThetaMatrix, generator_key, generator_matrix, order_lt, with_marginals

logger = logging.getLogger(__name__)


class LeadingTermError(AssertionError):
    """A monomial (or a splitting image) does not have the expected leading term."""


@dataclass(frozen=True)
class GeneratorSymbol:
    """E_i^(a) 1_weight, F_i^(a) 1_weight or the idempotent 1_weight (kind "1")."""

    kind: str
    weight: Weight
    i: int = 0
    a: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("E", "F", "1"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind != "1" and (self.a < 1 or not 1 <= self.i < self.weight.n):
            raise ValueError(f"bad generator {self.kind}_{self.i}^({self.a})")

    @classmethod
    def idempotent(cls, weight: Weight) -> "GeneratorSymbol":
        return cls("1", weight)

    @property
    def key(self) -> Optional[str]:
        return None if self.kind == "1" else generator_key(self.kind, self.i, self.a)

    def matrix(self, r: int) -> Optional[ThetaMatrix]:
        """psi_r image as a basis matrix, or None when the image is zero."""
        lam = self.weight.lift(r)
        if lam is None:
            return None
        if self.kind == "1":
            return ThetaMatrix.diagonal(lam)
        return generator_matrix(self.kind, self.i, self.a, lam)

    def scale(self, ell: int) -> "GeneratorSymbol":
        """The same symbol with divided power and weight multiplied by ell."""
        return GeneratorSymbol(self.kind, self.weight.scale(ell), self.i, self.a * ell)

    def __str__(self) -> str:
        if self.kind == "1":
            return f"1_{self.weight}"
        return f"{self.kind}{self.i}^({self.a})1_{self.weight}"


Word = Tuple[GeneratorSymbol, ...]


@dataclass
class SchurElement:
    """Sparse combination of basis elements [A] with coefficients tagged by ring."""

    coeffs: Dict[ThetaMatrix, Any] = field(default_factory=dict)
    tag: str = "generic"

    def __post_init__(self) -> None:
        self.coeffs = {A: c for A, c in self.coeffs.items() if not c == 0}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> List[ThetaMatrix]:
        return sorted(self.coeffs)

    def coefficient(self, A: ThetaMatrix, zero: Any = 0) -> Any:
        return self.coeffs.get(A, zero)

    def _combine(self, other: "SchurElement", sign: int) -> "SchurElement":
        if other.tag != self.tag:
            raise ValueError(f"cannot combine {self.tag} and {other.tag} elements")
        out = dict(self.coeffs)
        for A, c in other.coeffs.items():
            c = c if sign > 0 else -c
            out[A] = out[A] + c if A in out else c
        return SchurElement(out, self.tag)

    def __add__(self, other: "SchurElement") -> "SchurElement":
        return self._combine(other, 1)

    def __sub__(self, other: "SchurElement") -> "SchurElement":
        return self._combine(other, -1)

    def scale(self, c: Any) -> "SchurElement":
        return SchurElement({A: c * x for A, x in self.coeffs.items()}, self.tag)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurElement):
            return NotImplemented
        return self.tag == other.tag and (self - other).is_zero

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{A}" for A, c in sorted(self.coeffs.items()))


class SchurAlgebra:
    """S_v(n, r) over the ring selected by ``spec``, backed by a structure table."""

    def __init__(self, table: StructureTable, spec: SpecializationMap = GENERIC) -> None:
        self.table = table
        self.spec = spec
        self.n = table.n
        self.r = table.r
        self.basis = table.basis
        self._monomials: Dict[ThetaMatrix, Tuple[Word, SchurElement]] = {}
        self._products: Dict[Tuple[ThetaMatrix, ThetaMatrix], Dict[ThetaMatrix, LaurentPoly]] = {}

    def __repr__(self) -> str:
        return f"SchurAlgebra(n={self.n}, r={self.r}, {self.spec.tag})"

    def specialized(self, spec: SpecializationMap) -> "SchurAlgebra":
        """The same table read over another ring; generic caches are shared."""
        other = SchurAlgebra(self.table, spec)
        other._monomials = self._monomials
        other._products = self._products
        return other

    @property
    def tag(self) -> str:
        return self.spec.tag

    # -- elements --------------------------------------------------------

    def zero(self) -> SchurElement:
        return SchurElement({}, self.tag)

    def element(self, coeffs: Dict[ThetaMatrix, Any]) -> SchurElement:
        return SchurElement(coeffs, self.tag)

    def basis_element(self, A: ThetaMatrix) -> SchurElement:
        return SchurElement({A: self.spec.one()}, self.tag)

    def from_generic(self, x: SchurElement) -> SchurElement:
        """Specialize a generic element into this algebra's ring."""
        if x.tag != "generic":
            raise ValueError(f"expected a generic element, got {x.tag}")
        return SchurElement({A: self.spec(c) for A, c in x.coeffs.items()}, self.tag)

    def identity(self) -> SchurElement:
        """sum over realizable weights of [D_lambda]."""
        diagonals = {ThetaMatrix.diagonal(A.row_sums) for A in self.basis}
        return SchurElement({D: self.spec.one() for D in diagonals}, self.tag)

    def psi(self, g: GeneratorSymbol) -> SchurElement:
        """Image of a generator of the modified quantum group in S_v(n, r)."""
        A = g.matrix(self.r)
        return self.zero() if A is None else self.basis_element(A)

    # -- left action by generators ---------------------------------------

    def apply_symbol(self, g: GeneratorSymbol, x: SchurElement) -> SchurElement:
        """psi(g) * x."""
        lam = g.weight.lift(self.r)
        if lam is None:
            return self.zero()
        out: Dict[ThetaMatrix, Any] = {}
        for B, xb in x.coeffs.items():
            if B.row_sums != lam:
                continue
            if g.kind == "1":
                out[B] = out[B] + xb if B in out else xb
                continue
            for C, coeff in self.table.apply(g.key, B).items():
                term = xb * self.spec(coeff)
                out[C] = out[C] + term if C in out else term
        return SchurElement(out, self.tag)

    def apply_word(self, word: Sequence[GeneratorSymbol], x: SchurElement) -> SchurElement:
        """psi(g_1 g_2 ... g_k) * x, the rightmost factor acting first."""
        for g in reversed(word):
            x = self.apply_symbol(g, x)
            if x.is_zero:
                break
        return x

    def word_image(self, word: Sequence[GeneratorSymbol]) -> SchurElement:
        return self.apply_word(word, self.identity())

    # -- monomial basis ----------------------------------------------------

    def monomial_for(self, A: ThetaMatrix) -> Tuple[Word, SchurElement]:
        """A monomial with image [A] + correction, the correction strictly below A.

        Upper entries are moved down one row at a time, starting from the
        lowest row that has any (one E factor each); the lower triangle is
        then moved up starting from the highest row (one F factor each).
        The correction is generic.

        Raises:
            LeadingTermError: if the image is not [A] plus lower terms
        """
        if A in self._monomials:
            return self._monomials[A]
        n = A.n
        m = A.array.copy()
        word: List[GeneratorSymbol] = []
        while True:
            rows = [i for i in range(n) if m[i, i + 1:].sum() > 0]
            if not rows:
                break
            i = max(rows)
            s = int(m[i, i + 1:].sum())
            m[i + 1, i + 1:] += m[i, i + 1:]
            m[i, i + 1:] = 0
            word.append(GeneratorSymbol("E", Weight(tuple(int(x) for x in m.sum(axis=1))), i + 1, s))
        while True:
            rows = [j for j in range(n) if m[j, :j].sum() > 0]
            if not rows:
                break
            j = min(rows)
            s = int(m[j, :j].sum())
            m[j - 1, :j] += m[j, :j]
            m[j, :j] = 0
            word.append(GeneratorSymbol("F", Weight(tuple(int(x) for x in m.sum(axis=1))), j, s))
        word.append(GeneratorSymbol.idempotent(A.col_weight))

        image = self._generic_word_image(word)
        lead = image.coefficient(A, LaurentPoly.zero())
        if lead != 1:
            raise LeadingTermError(f"monomial for {A} has leading coefficient {lead}")
        correction = image - SchurElement({A: LaurentPoly.one()})
        bad = [B for B in correction.coeffs if not order_lt(B, A)]
        if bad:
            raise LeadingTermError(f"monomial for {A} has terms not below it: {[str(B) for B in bad]}")
        self._monomials[A] = (tuple(word), correction)
        return self._monomials[A]

    def _generic_word_image(self, word: Sequence[GeneratorSymbol]) -> SchurElement:
        if self.spec.kind == "generic":
            return self.word_image(word)
        return self.specialized(GENERIC).word_image(word)

    def basis_product(self, A: ThetaMatrix, B: ThetaMatrix) -> Dict[ThetaMatrix, LaurentPoly]:
        """Generic structure constants of [A][B] in the [C] basis."""
        key = (A, B)
        if key not in self._products:
            if A.col_sums != B.row_sums:
                self._products[key] = {}
            else:
                word, correction = self.monomial_for(A)
                generic = self if self.spec.kind == "generic" else self.specialized(GENERIC)
                result = generic.apply_word(word, SchurElement({B: LaurentPoly.one()}))
                for lower, coeff in correction.coeffs.items():
                    for C, c in self.basis_product(lower, B).items():
                        result = result - SchurElement({C: coeff * c})
                self._products[key] = dict(result.coeffs)
        return self._products[key]

    def multiply(self, x: SchurElement, y: SchurElement) -> SchurElement:
        """x * y over this algebra's ring."""
        if x.tag != self.tag or y.tag != self.tag:
            raise ValueError(f"elements tagged {x.tag}, {y.tag} do not belong to {self!r}")
        out: Dict[ThetaMatrix, Any] = {}
        for A, xa in x.coeffs.items():
            for B, yb in y.coeffs.items():
                for C, coeff in self.basis_product(A, B).items():
                    term = xa * yb * self.spec(coeff)
                    out[C] = out[C] + term if C in out else term
        return SchurElement(out, self.tag)

    def orbit_constants(self, A: ThetaMatrix, B: ThetaMatrix) -> Dict[ThetaMatrix, LaurentPoly]:
        """N_{A,B,C} as polynomials in v^2 = q, from <A><B> = v^(d_A + d_B) [A][B]."""
        return {
            C: c.shift(A.d + B.d - C.d)
            for C, c in self.basis_product(A, B).items()
        }


def brute_oracle_product(
    A: ThetaMatrix,
    B: ThetaMatrix,
    q_list: Iterable[int],
) -> Dict[ThetaMatrix, List[int]]:
    """Raw middle-flag counts for <A><B> by full enumeration.

    Only for tiny instances; counts that vanish at every q are left out.
    """
    if A.n != B.n or A.col_sums != B.row_sums:
        return {}
    q_list = list(q_list)
    result = {}
    for C in with_marginals(A.row_sums, B.col_sums):
        counts = [count_middle(A, B, C, q) for q in q_list]
        if any(counts):
            result[C] = counts
    return result
