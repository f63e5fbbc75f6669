"""Exact fields for row reduction, and the ``Domain`` bundle.

A ``Domain`` pairs a field with the specialization that carries generic
structure constants (Laurent polynomials) into it:

- generic: Q(v), the fraction field of Z[v]
- cyclotomic: Q[v]/(Phi_l), receiving A_l through reduction
- star: the same field, receiving the star algebra through v -> v^(ell^2)
- prime: F_p through v -> 1
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Optional

from sympy import QQ, Poly
from sympy.polys.fields import field as fraction_field

from .laurent import (
    _V,
    CycloElem,
    LaurentPoly,
    SpecializationMap,
    _cyclotomic_poly,
    default_l,
    prime_field,
)

logger = logging.getLogger(__name__)


class RationalFunctionField:
    """Q(v) backed by sympy's sparse fraction field."""

    name = "Q(v)"

    def __init__(self) -> None:
        self._K, self._v = fraction_field("v", QQ)
        self.zero = self._K.zero
        self.one = self._K.one

    def from_int(self, c: int):
        return self._K(c)

    def from_laurent(self, x: LaurentPoly):
        total = self.zero
        for exp, coeff in x.items():
            total = total + self._K(coeff) * self._v**exp
        return total

    def is_zero(self, x) -> bool:
        return x == self.zero


class CycloNumber:
    """Element of Q[v]/(Phi_l), kept as a reduced sympy Poly over QQ."""

    __slots__ = ("l", "poly")

    def __init__(self, l: int, poly: Poly) -> None:
        self.l = l
        self.poly = poly.rem(_cyclotomic_field_modulus(l))

    def _wrap(self, poly: Poly) -> "CycloNumber":
        return CycloNumber(self.l, poly)

    def __add__(self, other: "CycloNumber") -> "CycloNumber":
        return self._wrap(self.poly + other.poly)

    def __sub__(self, other: "CycloNumber") -> "CycloNumber":
        return self._wrap(self.poly - other.poly)

    def __neg__(self) -> "CycloNumber":
        return self._wrap(-self.poly)

    def __mul__(self, other: "CycloNumber") -> "CycloNumber":
        return self._wrap(self.poly * other.poly)

    def inverse(self) -> "CycloNumber":
        if self.poly.is_zero:
            raise ZeroDivisionError(f"division by zero in Q[v]/(Phi_{self.l})")
        return self._wrap(self.poly.invert(_cyclotomic_field_modulus(self.l)))

    def __truediv__(self, other: "CycloNumber") -> "CycloNumber":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.l == other.l and (self.poly - other.poly).is_zero

    def __hash__(self) -> int:
        return hash((self.l, tuple(self.poly.all_coeffs())))

    def __repr__(self) -> str:
        return f"CycloNumber(l={self.l}, {self.poly.as_expr()})"


@lru_cache(maxsize=None)
def _cyclotomic_field_modulus(l: int) -> Poly:
    return Poly(_cyclotomic_poly(l).all_coeffs(), _V, domain=QQ)


class CyclotomicField:
    """Q[v]/(Phi_l), the fraction field of A_l."""

    def __init__(self, l: int) -> None:
        self.l = l
        self.name = f"Q[v]/(Phi_{l})"
        self.zero = CycloNumber(l, Poly(0, _V, domain=QQ))
        self.one = CycloNumber(l, Poly(1, _V, domain=QQ))

    def from_int(self, c: int) -> CycloNumber:
        return CycloNumber(self.l, Poly(c, _V, domain=QQ))

    def from_cyclo(self, x: CycloElem) -> CycloNumber:
        if x.l != self.l:
            raise ValueError(f"element of A_{x.l} cannot enter Q[v]/(Phi_{self.l})")
        return CycloNumber(self.l, Poly(list(reversed(x.coeffs)), _V, domain=QQ))

    def from_laurent(self, x: LaurentPoly) -> CycloNumber:
        # v is a unit, so negative exponents are handled by folding mod l
        folded = {}
        for exp, coeff in x.items():
            folded[exp % self.l] = folded.get(exp % self.l, 0) + coeff
        top = max(folded, default=0)
        coeffs = [folded.get(e, 0) for e in range(top, -1, -1)]
        return CycloNumber(self.l, Poly(coeffs, _V, domain=QQ))

    def is_zero(self, x: CycloNumber) -> bool:
        return x.poly.is_zero


class PrimeField:
    """F_p through ``galois``; elements are 0-dimensional field arrays."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.name = f"F_{p}"
        self.GF = prime_field(p)
        self.zero = self.GF(0)
        self.one = self.GF(1)

    def from_int(self, c: int):
        return self.GF(int(c) % self.p)

    def from_laurent(self, x: LaurentPoly):
        return self.from_int(int(x.evaluate(1)))

    def is_zero(self, x) -> bool:
        return bool(x == 0)


@dataclass(frozen=True)
class Domain:
    """A field together with the specialization feeding it."""

    name: str
    field: Any
    specialization: SpecializationMap

    @classmethod
    def generic(cls) -> "Domain":
        return _generic_domain()

    @classmethod
    def cyclotomic(cls, ell: int, l: Optional[int] = None) -> "Domain":
        l = l or default_l(ell)
        return cls(f"cyclotomic(ell={ell}, l={l})", CyclotomicField(l), SpecializationMap.cyclotomic(ell, l))

    @classmethod
    def star(cls, ell: int, l: Optional[int] = None) -> "Domain":
        l = l or default_l(ell)
        return cls(f"star(ell={ell}, l={l})", CyclotomicField(l), SpecializationMap.star(ell, l))

    @classmethod
    def prime(cls, p: int, ell: Optional[int] = None, l: Optional[int] = None) -> "Domain":
        spec = SpecializationMap.prime(p, ell, l)
        return cls(f"prime(p={p}, l={spec.l})", PrimeField(p), spec)

    @property
    def is_generic(self) -> bool:
        return self.specialization.kind == "generic"

    def coerce(self, x: LaurentPoly):
        """Image of a generic structure constant in the field."""
        kind = self.specialization.kind
        if kind == "generic":
            return self.field.from_laurent(x)
        if kind in ("cyclotomic", "star"):
            return self.field.from_cyclo(self.specialization(x))
        return self.field.from_int(int(x.evaluate(1)))

    def coerce_ring_element(self, x):
        """Image of an element of the specialized ring (A_l, F_p or Z[v, v^-1])."""
        if isinstance(x, LaurentPoly):
            return self.coerce(x) if self.is_generic else self.field.from_laurent(x)
        if isinstance(x, CycloElem):
            return self.field.from_cyclo(x)
        return self.field.from_int(int(x))


@lru_cache(maxsize=None)
def _generic_domain() -> Domain:
    return Domain("generic", RationalFunctionField(), SpecializationMap.generic())
