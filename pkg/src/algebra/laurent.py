"""Exact coefficient arithmetic.

Laurent polynomials in ``v`` with integer coefficients, quantum integers and
Gaussian binomials, cyclotomic polynomials, the quotient rings
``A_l = Z[v, v^-1]/(Phi_l)`` and the specialization maps that carry generic
structure constants into them (or further into a prime field via v -> 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

import galois
import sympy
from sympy import QQ, ZZ, Poly

logger = logging.getLogger(__name__)

_V = sympy.Symbol("v")

Scalar = Union[int, Fraction]


class NonDivisibleError(ArithmeticError):
    """Raised when a Laurent polynomial does not divide another one."""


class SpecializationError(ValueError):
    """Raised for an invalid specialization (bad ell/l pairing, bad prime)."""


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Immutable sparse element of Z[v, v^-1].

    Stored as a map exponent -> nonzero integer coefficient.  Instances hash
    and compare by value; comparing against a plain ``int`` compares with the
    constant polynomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None) -> None:
        terms: Dict[int, int] = {}
        if coeffs:
            for exp, coeff in coeffs.items():
                coeff = int(coeff)
                if coeff:
                    terms[int(exp)] = coeff
        self._terms = terms
        self._hash: Optional[int] = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        """Decode ``{"coeffs": {"<exp>": <int>}}``."""
        return cls({int(e): int(c) for e, c in data["coeffs"].items()})

    # -- inspection ------------------------------------------------------

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    # -- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            terms[exp] = terms.get(exp, 0) + coeff
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) == 1:
                ((exp, coeff),) = self._terms.items()
                if coeff in (1, -1):
                    return LaurentPoly({exp * k: coeff ** (-k)})
            raise NonDivisibleError(f"{self} is not a unit in Z[v, v^-1]")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- substitutions ---------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The bar involution v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def substitute_power(self, d: int) -> "LaurentPoly":
        """Substitute v -> v^d."""
        return LaurentPoly({e * d: c for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def evaluate(self, x: Scalar) -> Scalar:
        """Evaluate at a rational ``x`` (nonzero when negative exponents occur)."""
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            total += coeff * Fraction(x) ** exp
        return int(total) if total.denominator == 1 else total

    def evaluate_q(self, q: int) -> Scalar:
        """Evaluate at v^2 = q; every exponent must be even."""
        odd = [e for e in self._terms if e % 2]
        if odd:
            raise ValueError(f"{self} has odd exponents {odd}; not a polynomial in q")
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            total += coeff * Fraction(q) ** (exp // 2)
        return int(total) if total.denominator == 1 else total

    def to_poly(self, domain=ZZ) -> Tuple[int, Poly]:
        """Return ``(k, P)`` with ``self = v^k * P(v)`` and P(0) != 0."""
        if not self._terms:
            return 0, Poly(0, _V, domain=domain)
        low, high = self.min_exp, self.max_exp
        coeffs = [self._terms.get(e, 0) for e in range(high, low - 1, -1)]
        return low, Poly(coeffs, _V, domain=domain)

    @classmethod
    def from_poly(cls, poly: Poly, shift: int = 0) -> "LaurentPoly":
        coeffs = poly.all_coeffs()
        degree = len(coeffs) - 1
        terms = {}
        for idx, c in enumerate(coeffs):
            if c:
                if getattr(c, "q", 1) != 1:
                    raise NonDivisibleError(f"non-integral coefficient {c}")
                terms[degree - idx + shift] = int(c)
        return cls(terms)

    # -- encoding --------------------------------------------------------

    def to_json(self) -> Dict[str, Dict[str, int]]:
        return {"coeffs": {str(e): c for e, c in sorted(self._terms.items())}}

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in sorted(self._terms.items(), reverse=True):
            if exp == 0:
                mono = ""
            elif exp == 1:
                mono = "v"
            else:
                mono = f"v^{exp}"
            if mono and abs(coeff) == 1:
                body = mono
            elif mono:
                body = f"{abs(coeff)}*{mono}"
            else:
                body = str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


V = LaurentPoly.monomial(1)


def exact_divide(x: LaurentPoly, y: LaurentPoly) -> LaurentPoly:
    """Return ``x / y`` in Z[v, v^-1].

    Raises:
        ZeroDivisionError: if ``y`` is zero
        NonDivisibleError: if the quotient is not a Laurent polynomial with
            integer coefficients
    """
    if y.is_zero:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if x.is_zero:
        return LaurentPoly.zero()
    kx, px = x.to_poly(QQ)
    ky, py = y.to_poly(QQ)
    quotient, remainder = px.div(py)
    if not remainder.is_zero:
        raise NonDivisibleError(f"{y} does not divide {x}")
    return LaurentPoly.from_poly(quotient, kx - ky)


# ---------------------------------------------------------------------------
# Quantum integers and binomials
# ---------------------------------------------------------------------------


def quantum_integer(m: int) -> LaurentPoly:
    """[m] = (v^m - v^-m)/(v - v^-1)."""
    if m < 0:
        return -quantum_integer(-m)
    return LaurentPoly({m - 1 - 2 * s: 1 for s in range(m)})


def quantum_factorial(m: int) -> LaurentPoly:
    result = LaurentPoly.one()
    for s in range(1, m + 1):
        result = result * quantum_integer(s)
    return result


@lru_cache(maxsize=None)
def _gauss(m: int, k: int) -> LaurentPoly:
    if k < 0 or k > m:
        return LaurentPoly.zero()
    if k == 0 or k == m:
        return LaurentPoly.one()
    # [m, k] = v^-k [m-1, k] + v^(m-k) [m-1, k-1]
    return _gauss(m - 1, k).shift(-k) + _gauss(m - 1, k - 1).shift(m - k)


def gauss_binomial(m: int, k: int, d: int = 1) -> LaurentPoly:
    """The Gaussian binomial [m over k] in v_i = v^d.

    Returns zero when k is outside 0..m.
    """
    if m < 0:
        raise ValueError(f"gauss_binomial needs m >= 0, got {m}")
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    return _gauss(m, k).substitute_power(d)


def quantum_binomial(m: int, t: int, d: int = 1) -> LaurentPoly:
    """[m over t] for any integer m and t >= 0.

    For m < 0 this uses [m over t] = (-1)^t [t - m - 1 over t].
    """
    if t < 0:
        return LaurentPoly.zero()
    if m >= 0:
        return gauss_binomial(m, t, d)
    sign = -1 if t % 2 else 1
    return gauss_binomial(t - m - 1, t, d) * sign


# ---------------------------------------------------------------------------
# Cyclotomic quotients
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cyclotomic_poly(l: int) -> Poly:
    return sympy.cyclotomic_poly(l, _V, polys=True)


def cyclotomic(l: int) -> LaurentPoly:
    """The l-th cyclotomic polynomial Phi_l(v)."""
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    return LaurentPoly.from_poly(_cyclotomic_poly(l))


def _phi_degree(l: int) -> int:
    return _cyclotomic_poly(l).degree()


class CycloElem:
    """Element of Z[v]/(Phi_l), stored as its reduced representative.

    ``coeffs`` lists the coefficients of 1, v, ..., v^(deg Phi_l - 1).
    """

    __slots__ = ("l", "coeffs")

    def __init__(self, l: int, coeffs) -> None:
        width = _phi_degree(l)
        values = [int(c) for c in coeffs]
        if len(values) > width:
            raise ValueError(f"representative of degree {len(values) - 1} is not reduced mod Phi_{l}")
        self.l = l
        self.coeffs: Tuple[int, ...] = tuple(values + [0] * (width - len(values)))

    @classmethod
    def zero(cls, l: int) -> "CycloElem":
        return cls(l, [])

    @classmethod
    def one(cls, l: int) -> "CycloElem":
        return cls(l, [1])

    @classmethod
    def from_poly(cls, l: int, poly: Poly) -> "CycloElem":
        reduced = poly.rem(_cyclotomic_poly(l))
        return cls(l, [int(c) for c in reversed(reduced.all_coeffs())])

    def _check(self, other) -> "CycloElem":
        if isinstance(other, int):
            return CycloElem(self.l, [other])
        if not isinstance(other, CycloElem):
            return NotImplemented
        if other.l != self.l:
            raise SpecializationError(f"cannot mix A_{self.l} and A_{other.l} elements")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycloElem(self.l, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.l, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycloElem.from_poly(self.l, self.to_poly() * other.to_poly())

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycloElem":
        if k < 0:
            raise ValueError("negative powers are not supported; reduce a Laurent monomial with reduce_mod")
        result = CycloElem.one(self.l)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycloElem(self.l, [other])
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.l == other.l and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.l, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_poly(self) -> Poly:
        return Poly(list(reversed(self.coeffs)) or [0], _V, domain=ZZ)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly({e: c for e, c in enumerate(self.coeffs)})

    def evaluate_at_one(self, p: int) -> int:
        """Image under v -> 1 in F_p, as an integer in 0..p-1.

        Raises:
            SpecializationError: unless Phi_l(1) = 0 mod p
        """
        if cyclotomic(self.l).evaluate(1) % p:
            raise SpecializationError(f"v -> 1 is not defined on A_{self.l} over F_{p}")
        return sum(self.coeffs) % p

    def __repr__(self) -> str:
        return f"CycloElem(l={self.l}, {self})"

    def __str__(self) -> str:
        return str(self.to_laurent())


def reduce_mod(x: LaurentPoly, l: int) -> CycloElem:
    """Canonical representative of ``x`` in Z[v]/(Phi_l).

    Exponents are first folded modulo l (Phi_l divides v^l - 1), which also
    clears negative powers, then the remainder mod Phi_l is taken.
    """
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    folded: Dict[int, int] = {}
    for exp, coeff in x.coeffs.items():
        e = exp % l
        folded[e] = folded.get(e, 0) + coeff
    if not any(folded.values()):
        return CycloElem.zero(l)
    return CycloElem.from_poly(l, _poly_from_exponents(folded))


def _poly_from_exponents(terms: Mapping[int, int]) -> Poly:
    top = max(terms)
    return Poly([terms.get(e, 0) for e in range(top, -1, -1)], _V, domain=ZZ)


def epsilon(ell: int, l: int) -> int:
    """The image of v^(ell^2) in A_l, which is the constant +1 or -1."""
    image = reduce_mod(LaurentPoly.monomial(ell * ell), l)
    if image == 1:
        return 1
    if image == -1:
        return -1
    raise SpecializationError(f"v^{ell * ell} is not +-1 in A_{l} (got {image})")


def default_l(ell: int) -> int:
    """2*ell for even ell, ell for odd ell."""
    return 2 * ell if ell % 2 == 0 else ell


# ---------------------------------------------------------------------------
# Specialization maps
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def prime_field(p: int):
    return galois.GF(p)


_KINDS = ("generic", "cyclotomic", "star", "prime")


@dataclass(frozen=True)
class SpecializationMap:
    """Base change from Z[v, v^-1] to a coefficient ring.

    Kinds:
        generic: identity on Z[v, v^-1]
        cyclotomic: reduction into A_l
        star: v -> v^(ell^2) followed by reduction, i.e. v acts as epsilon
        prime: v -> 1 into F_p (requires Phi_l(1) = 0 mod p)
    """

    kind: str = "generic"
    ell: int = 1
    l: int = 1
    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise SpecializationError(f"unknown specialization kind {self.kind!r}")
        if self.ell < 1:
            raise SpecializationError(f"ell must be positive, got {self.ell}")
        if self.l not in (self.ell, 2 * self.ell):
            raise SpecializationError(f"l must be ell or 2*ell, got l={self.l} for ell={self.ell}")
        if self.ell % 2 == 0 and self.l != 2 * self.ell:
            raise SpecializationError(f"even ell={self.ell} forces l = {2 * self.ell}")
        if self.kind == "prime":
            if self.p is None or not sympy.isprime(self.p):
                raise SpecializationError(f"prime specialization needs a prime p, got {self.p}")
            if cyclotomic(self.l).evaluate(1) % self.p:
                raise SpecializationError(
                    f"v -> 1 into F_{self.p} is not defined on A_{self.l}: Phi_{self.l}(1) != 0 mod {self.p}"
                )

    @classmethod
    def generic(cls) -> "SpecializationMap":
        return cls()

    @classmethod
    def cyclotomic(cls, ell: int, l: Optional[int] = None) -> "SpecializationMap":
        return cls("cyclotomic", ell, l or default_l(ell))

    @classmethod
    def star(cls, ell: int, l: Optional[int] = None) -> "SpecializationMap":
        return cls("star", ell, l or default_l(ell))

    @classmethod
    def prime(cls, p: int, ell: Optional[int] = None, l: Optional[int] = None) -> "SpecializationMap":
        ell = ell or p
        return cls("prime", ell, l or default_l(ell), p)

    @property
    def tag(self) -> str:
        """Name of the target ring; star and cyclotomic both land in A_l."""
        if self.kind == "generic":
            return "generic"
        if self.kind == "prime":
            return f"prime:{self.p}"
        return f"cyclo:{self.l}"

    @property
    def epsilon(self) -> int:
        return epsilon(self.ell, self.l)

    def __call__(self, x: LaurentPoly):
        if self.kind == "generic":
            return x
        if self.kind == "cyclotomic":
            return reduce_mod(x, self.l)
        if self.kind == "star":
            return reduce_mod(x.substitute_power(self.ell * self.ell), self.l)
        return prime_field(self.p)(int(x.evaluate(1)) % self.p)

    def zero(self):
        return self(LaurentPoly.zero())

    def one(self):
        return self(LaurentPoly.one())


GENERIC = SpecializationMap.generic()
