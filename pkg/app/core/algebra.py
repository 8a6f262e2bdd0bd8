"""
Exact algebra for RecurrentGF.

This module provides the arithmetic substrate used by every other module:
- Laurent polynomials in z1..zn with exact rational coefficients
- Rational functions in a monomial/content canonical form
- Expansion of a rational function at infinity into a truncated table of
  coefficients of z^e, computed by formal power series division

Polynomial products and exact quotients are delegated to SymPy's sparse
polynomial rings over QQ; scalars cross the module boundary as
fractions.Fraction.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from app.core.errors import (
    DimensionMismatch,
    DivisionByZero,
    InputError,
    NotExpandableAtInfinity,
    OutsideWindow,
)
from app.core.lattice import (
    MultiIndex,
    add,
    as_index,
    box,
    check_dims,
    cmax,
    cmin,
    grlex_key,
    is_nonnegative,
    leq,
    neg,
    ones,
    sub,
    zero,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def poly_ring(n: int):
    """Return QQ[z1..zn] ordered graded-lexicographically."""
    if n < 1:
        raise DimensionMismatch(f"dimension must be positive, got {n}")
    names = ",".join(f"z{i + 1}" for i in range(n))
    return ring(names, QQ, grlex)[0]


def to_fraction(c) -> Fraction:
    """Convert a ground-domain element of QQ into a Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


def to_qq(c: Scalar):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _monomial_poly(n: int, e: MultiIndex):
    return poly_ring(n).from_dict({e: QQ(1)})


class LaurentPoly:
    """
    A finite sum of c·z^e over e in Z^n with exact rational coefficients.

    The value is stored as z^offset · poly, where poly is an ordinary
    polynomial of QQ[z1..zn] with no monomial factor. The zero polynomial has
    a zero offset. Instances are immutable.
    """

    __slots__ = ("dim", "offset", "poly")

    def __init__(self, dim: int, offset: MultiIndex, poly):
        self.dim = dim
        self.offset = offset
        self.poly = poly

    @classmethod
    def _normalized(cls, dim: int, offset: MultiIndex, poly) -> "LaurentPoly":
        if not poly:
            return cls(dim, zero(dim), poly_ring(dim).zero)
        low = tuple(min(e[j] for e in poly.keys()) for j in range(dim))
        if any(low):
            poly = poly_ring(dim).from_dict({sub(e, low): c for e, c in poly.items()})
            offset = add(offset, low)
        return cls(dim, offset, poly)

    @classmethod
    def from_terms(cls, dim: int, terms: Mapping[Sequence[int], Scalar]) -> "LaurentPoly":
        """
        Build a Laurent polynomial from an exponent → coefficient map.

        Args:
            dim: Number of variables n
            terms: Map from exponent vectors (negative entries allowed) to
                exact coefficients; zero coefficients are dropped

        Raises:
            DimensionMismatch: If an exponent vector has the wrong length
        """
        items = []
        for e, c in terms.items():
            e = as_index(e)
            if len(e) != dim:
                raise DimensionMismatch(f"exponent {e} does not have dimension {dim}")
            c = Fraction(c)
            if c:
                items.append((e, c))
        if not items:
            return cls.zero(dim)
        low = tuple(min(e[j] for e, _ in items) for j in range(dim))
        poly = poly_ring(dim).from_dict({sub(e, low): to_qq(c) for e, c in items})
        return cls._normalized(dim, low, poly)

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls(dim, zero(dim), poly_ring(dim).zero)

    @classmethod
    def constant(cls, dim: int, c: Scalar) -> "LaurentPoly":
        return cls.from_terms(dim, {zero(dim): c})

    @classmethod
    def one(cls, dim: int) -> "LaurentPoly":
        return cls.constant(dim, 1)

    @classmethod
    def monomial(cls, e: Sequence[int], c: Scalar = 1) -> "LaurentPoly":
        e = as_index(e)
        return cls.from_terms(len(e), {e: c})

    # -- inspection -------------------------------------------------------

    def terms(self) -> Dict[MultiIndex, Fraction]:
        """Exponent → coefficient map with zero terms absent."""
        return {add(e, self.offset): to_fraction(c) for e, c in self.poly.items()}

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order (leading term first)."""
        return sorted(self.terms().items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, e: Sequence[int]) -> Fraction:
        c = self.poly.get(sub(as_index(e), self.offset))
        return to_fraction(c) if c is not None else Fraction(0)

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self):
        return not self.is_zero()

    def __len__(self):
        return len(self.poly)

    def is_polynomial(self) -> bool:
        """True when every exponent is non-negative."""
        return is_nonnegative(self.offset)

    def min_exponents(self) -> MultiIndex:
        return self.offset

    def max_exponents(self) -> MultiIndex:
        if self.is_zero():
            return zero(self.dim)
        top = tuple(max(e[j] for e in self.poly.keys()) for j in range(self.dim))
        return add(self.offset, top)

    def leading(self):
        """(exponent, coefficient) of the graded-lexicographic leading term."""
        if self.is_zero():
            raise InputError("the zero polynomial has no leading term")
        return self.sorted_terms()[0]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise DimensionMismatch(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.dim, other)
        return NotImplemented

    def _lift(self, shift: MultiIndex):
        if not any(shift):
            return self.poly
        return self.poly * _monomial_poly(self.dim, shift)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = cmin(self.offset, other.offset)
        poly = self._lift(sub(self.offset, low)) + other._lift(sub(other.offset, low))
        return LaurentPoly._normalized(self.dim, low, poly)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.dim, self.offset, -self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero(self.dim)
        # a product of polynomials without monomial factors has none either
        return LaurentPoly(self.dim, add(self.offset, other.offset), self.poly * other.poly)

    __rmul__ = __mul__

    def shift(self, e: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial z^e."""
        if self.is_zero():
            return self
        return LaurentPoly(self.dim, add(self.offset, as_index(e)), self.poly)

    def exquo(self, other: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Exact quotient self/other in the Laurent ring, or None."""
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return self
        q, r = self.poly.div(other.poly)
        if r:
            return None
        return LaurentPoly._normalized(self.dim, sub(self.offset, other.offset), q)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                return self == LaurentPoly.constant(self.dim, other)
            return NotImplemented
        return self.dim == other.dim and self.offset == other.offset and self.poly == other.poly

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms().items())))

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Render as text, e.g. ``z1^2*z2 - z1*z2 - z2 - z1 + 1``."""
        names = list(names or default_names(self.dim))
        if self.is_zero():
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


def default_names(n: int):
    return [f"z{i + 1}" for i in range(n)]


def _content_normalizer(p: LaurentPoly) -> Fraction:
    """Scalar λ making λ·p integral, content 1, positive leading coefficient."""
    coeffs = list(p.terms().values())
    den = math.lcm(*(c.denominator for c in coeffs))
    num = math.gcd(*(int(c * den) for c in coeffs))
    lam = Fraction(den, num)
    if p.leading()[1] < 0:
        lam = -lam
    return lam


class RationalFn:
    """
    A quotient of two Laurent polynomials in canonical form.

    Canonical form: numerator and denominator are ordinary polynomials with
    no monomial factor in common, and the denominator has integer
    coefficients of content 1 with a positive graded-lexicographic leading
    coefficient. Common non-monomial factors are not removed, so two equal
    functions may have different canonical forms; ``==`` compares by
    cross-multiplication.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPoly, denominator: Optional[LaurentPoly] = None):
        if denominator is None:
            denominator = LaurentPoly.one(numerator.dim)
        check_dims(zero(numerator.dim), zero(denominator.dim))
        if denominator.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        dim = numerator.dim
        if numerator.is_zero():
            self.numerator = LaurentPoly.zero(dim)
            self.denominator = LaurentPoly.one(dim)
            return
        s = sub(numerator.offset, denominator.offset)
        top = tuple(max(x, 0) for x in s)
        bottom = tuple(max(-x, 0) for x in s)
        num = LaurentPoly(dim, top, numerator.poly)
        den = LaurentPoly(dim, bottom, denominator.poly)
        lam = _content_normalizer(den)
        if lam != 1:
            num, den = num * lam, den * lam
        self.numerator = num
        self.denominator = den

    @classmethod
    def from_terms(cls, dim: int, numerator: Mapping, denominator: Optional[Mapping] = None):
        den = LaurentPoly.from_terms(dim, denominator) if denominator is not None else None
        return cls(LaurentPoly.from_terms(dim, numerator), den)

    @classmethod
    def zero(cls, dim: int) -> "RationalFn":
        return cls(LaurentPoly.zero(dim))

    @classmethod
    def monomial(cls, e: Sequence[int], c: Scalar = 1) -> "RationalFn":
        return cls(LaurentPoly.monomial(e, c))

    @property
    def dim(self) -> int:
        return self.numerator.dim

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            check_dims(zero(self.dim), zero(other.dim))
            return other
        if isinstance(other, LaurentPoly):
            check_dims(zero(self.dim), zero(other.dim))
            return RationalFn(other)
        if isinstance(other, (int, Fraction)):
            return RationalFn(LaurentPoly.constant(self.dim, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.denominator == other.denominator:
            return RationalFn(self.numerator + other.numerator, self.denominator)
        return RationalFn(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFn(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero function")
        return RationalFn(self.numerator * other.denominator, self.denominator * other.numerator)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def as_polynomial(self) -> Optional[LaurentPoly]:
        """The Laurent polynomial equal to this function, if there is one."""
        return self.numerator.exquo(self.denominator)

    def cancel_factor(self, factor: LaurentPoly) -> "RationalFn":
        """Divide out ``factor`` from both parts as often as it divides both exactly."""
        if factor.is_zero() or len(factor) < 2:
            return self
        num, den = self.numerator, self.denominator
        while True:
            qn, qd = num.exquo(factor), den.exquo(factor)
            if qn is None or qd is None:
                break
            num, den = qn, qd
            logger.debug("cancelled factor %s", factor.format())
        if num is self.numerator:
            return self
        return RationalFn(num, den)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        num = self.numerator.format(names)
        if self.denominator == LaurentPoly.one(self.dim):
            return num
        return f"({num}) / ({self.denominator.format(names)})"

    def __repr__(self):
        return f"RationalFn({self.format()})"


def poly_arith(op: str, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """
    Add, subtract or multiply two Laurent polynomials.

    Raises:
        DimensionMismatch: If the operands live in different dimensions
        InputError: For an unknown operation name
    """
    check_dims(zero(a.dim), zero(b.dim))
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError(f"unknown polynomial operation {op!r}")


def ratfn_arith(op: str, f: RationalFn, g: RationalFn) -> RationalFn:
    """Add, subtract, multiply or divide two rational functions."""
    check_dims(zero(f.dim), zero(g.dim))
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise InputError(f"unknown rational function operation {op!r}")


def ratfn_eq(f: RationalFn, g: RationalFn) -> bool:
    """Exact equality by cross-multiplication of numerators and denominators."""
    check_dims(zero(f.dim), zero(g.dim))
    return f.numerator * g.denominator == g.numerator * f.denominator


@dataclass(frozen=True)
class CoeffTable:
    """
    Truncated Laurent expansion at infinity.

    ``entries`` maps z-exponents to nonzero coefficients inside the window
    -(order+1)·I ≤ e ≤ upper. The coefficient of z^-(x+I) is the value f(x)
    of the expanded sequence, so x ranges over the box [0, order]^n. Queries
    outside the window raise OutsideWindow instead of returning zero.
    """
    dim: int
    order: int
    upper: MultiIndex
    entries: Mapping[MultiIndex, Fraction]

    @property
    def lower(self) -> MultiIndex:
        return (-(self.order + 1),) * self.dim

    def in_window(self, e: Sequence[int]) -> bool:
        e = as_index(e)
        return len(e) == self.dim and leq(self.lower, e) and leq(e, self.upper)

    def window(self) -> Iterator[MultiIndex]:
        return box(self.lower, self.upper)

    def coeff(self, e: Sequence[int]) -> Fraction:
        e = as_index(e)
        if not self.in_window(e):
            raise OutsideWindow(f"exponent {e} outside window {self.lower}..{self.upper}")
        return self.entries.get(e, Fraction(0))

    def value(self, x: Sequence[int]) -> Fraction:
        """The sequence value f(x), the coefficient of z^-(x+I)."""
        x = as_index(x)
        return self.coeff(neg(add(x, ones(self.dim))))

    def mismatches(self, other: "CoeffTable") -> list:
        """Exponents of the shared window where the two tables differ, in graded order."""
        check_dims(zero(self.dim), zero(other.dim))
        keys = set(self.entries) | set(other.entries)
        bad = [
            e for e in keys
            if self.in_window(e) and other.in_window(e) and self.coeff(e) != other.coeff(e)
        ]
        return sorted(bad, key=grlex_key)


def expand_at_infinity(f: RationalFn, order: int, upper: Optional[Sequence[int]] = None) -> CoeffTable:
    """
    Expand a rational function in negative powers of z1..zn.

    Substituting z_j = 1/w_j turns F into w^s·N~(w)/D~(w); the power series
    N~/D~ is computed by exact division over the box the window needs.

    Args:
        f: The rational function to expand
        order: Truncation order d; values f(x) are produced for x in [0, d]^n
        upper: Optional upper corner of the exponent window; defaults to the
            largest exponent the expansion can reach, and never below -I so
            every f(x) with x ≥ 0 is inside it

    Returns:
        CoeffTable: All coefficients inside the window

    Raises:
        NotExpandableAtInfinity: If the denominator has no term at its
            componentwise maximal exponent (zero constant term after the
            substitution)
    """
    if order < 0:
        raise InputError(f"order must be non-negative, got {order}")
    n = f.dim
    if f.is_zero():
        up = as_index(upper) if upper is not None else neg(ones(n))
        return CoeffTable(n, order, up, {})

    num, den = f.numerator, f.denominator
    top_d = den.max_exponents()
    top_n = num.max_exponents()
    dterms = den.terms()
    lead = dterms.get(top_d)
    if not lead:
        raise NotExpandableAtInfinity(
            f"denominator {den.format()} has no term at its corner {top_d}"
        )
    natural = sub(top_n, top_d)
    up = as_index(upper) if upper is not None else cmax(natural, neg(ones(n)))
    check_dims(up, natural)

    lower = (-(order + 1),) * n
    reach = sub(natural, lower)
    rev_den = {sub(top_d, e): c for e, c in dterms.items() if e != top_d}
    rev_num = {sub(top_n, e): c for e, c in num.terms().items()}

    series: Dict[MultiIndex, Fraction] = {}
    for k in box(zero(n), reach):
        acc = Fraction(rev_num.get(k, 0))
        for beta, c in rev_den.items():
            if leq(beta, k):
                prev = series.get(sub(k, beta))
                if prev:
                    acc -= c * prev
        if acc:
            series[k] = acc / lead

    entries = {}
    for k, v in series.items():
        e = sub(natural, k)
        if leq(e, up):
            entries[e] = v
    logger.debug("expanded %s to order %d (%d nonzero terms)", f.format(), order, len(entries))
    return CoeffTable(n, order, up, entries)


def coeff_at(f: RationalFn, x: Sequence[int]) -> Fraction:
    """
    The coefficient f(x) of z^-(x+I) in the expansion of F at infinity.

    Raises:
        InputError: If x has a negative component
        NotExpandableAtInfinity: As in expand_at_infinity
    """
    x = as_index(x)
    check_dims(x, zero(f.dim))
    if not is_nonnegative(x):
        raise InputError(f"coefficient index {x} must be non-negative")
    return expand_at_infinity(f, max(x) if x else 0).value(x)


def sum_all(items: Iterable[RationalFn], dim: int) -> RationalFn:
    total = RationalFn.zero(dim)
    for item in items:
        total = total + item
    return total
