"""Exact scalar arithmetic: rationals extended by square roots.

A :class:`Scalar` is a finite sum ``q_0 + q_1*sqrt(m_1) + ... + q_k*sqrt(m_k)``
with rational coefficients and pairwise distinct square-free integer radicands
(``m = 1`` carries the rational part).  Square roots of distinct square-free
positive integers are linearly independent over the rationals, so

* the zero test is coefficient comparison, and
* the sign of a nonzero value can always be separated from zero by refining
  dyadic enclosures of the roots.

The class is closed under ``+``, ``-``, ``*`` and ``/`` and supports exact
total-order comparison, which is what the geometric predicates need.  Dyadic
enclosures of any requested width are available on demand, so consumers that
only need certified approximations (decimal export, blending formulas) refine
instead of symbolically manipulating nested radicals.

Values of the dyadic evaluation map live in :class:`DyadicRational`;
:class:`RationalInterval` is the shared enclosure type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "Scalar",
    "DyadicRational",
    "RationalInterval",
    "compare",
    "parse_scalar",
]

_SIEVE_LIMIT = 100_000
_primes: list[int] | None = None


def _small_primes() -> list[int]:
    global _primes
    if _primes is None:
        limit = _SIEVE_LIMIT
        mark = bytearray([1]) * (limit + 1)
        mark[0] = mark[1] = 0
        for i in range(2, isqrt(limit) + 1):
            if mark[i]:
                mark[i * i :: i] = bytearray(len(mark[i * i :: i]))
        _primes = [i for i in range(limit + 1) if mark[i]]
    return _primes


def _square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n = s*s*m`` and ``m`` square-free.

    Complete for all n whose prime-square factors have primes below the
    sieve limit, hence for every n <= _SIEVE_LIMIT**2 * anything square-free,
    and in particular for every n below 10**10.  Larger inputs fall back to
    a full factorization.
    """
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, m = 1, 1
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            s *= r
        elif n < 10**10:
            # no prime factor below the sieve limit and not a square,
            # so n has no square factor at this size
            m *= n
        else:
            from sympy import factorint  # heavyweight; only for oversized radicands

            for p, e in sorted(factorint(n).items()):
                s *= p ** (e // 2)
                if e % 2:
                    m *= p
        return s, m
    return s, m


_root_cache: dict[int, tuple[int, int]] = {}


def _root_floor(m: int, prec: int) -> int:
    """Integer a with a <= sqrt(m) * 2**prec < a + 1."""
    cached = _root_cache.get(m)
    if cached is not None and cached[0] >= prec:
        return cached[1] >> (cached[0] - prec)
    a = isqrt(m << (2 * prec))
    _root_cache[m] = (prec, a)
    return a


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {type(value).__name__}")


class Scalar:
    """An exact element of the field generated by square roots of rationals.

    Instances are immutable; all arithmetic returns new objects.  Equality is
    exact value equality (structural on the canonical form) and the ordering
    methods decide the true numeric order.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._terms = value._terms
        else:
            q = _fraction(value)
            self._terms = {1: q} if q else {}
        self._hash = None

    @classmethod
    def _make(cls, terms: dict[int, Fraction]) -> "Scalar":
        s = object.__new__(cls)
        s._terms = {m: q for m, q in terms.items() if q}
        s._hash = None
        return s

    @classmethod
    def root(cls, value) -> "Scalar":
        """Exact square root of a nonnegative rational."""
        q = _fraction(value)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls(0)
        s, m = _square_free_split(q.numerator * q.denominator)
        return cls._make({m: Fraction(s, q.denominator)})

    @classmethod
    def of(cls, value) -> "Scalar":
        return value if isinstance(value, Scalar) else cls(value)

    # -- structure ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return all(m == 1 for m in self._terms)

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if self.is_rational:
            return self._terms[1]
        raise ValueError(f"{self} is irrational")

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[int, Fraction]]:
        """Canonical term list, sorted by radicand (1 first)."""
        return sorted(self._terms.items())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = Scalar.of(other)
        terms = dict(self._terms)
        for m, q in o._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + q
        return Scalar._make(terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make({m: -q for m, q in self._terms.items()})

    def __sub__(self, other):
        return self + (-Scalar.of(other))

    def __rsub__(self, other):
        return Scalar.of(other) + (-self)

    def __mul__(self, other):
        o = Scalar.of(other)
        terms: dict[int, Fraction] = {}
        for m1, q1 in self._terms.items():
            for m2, q2 in o._terms.items():
                if m1 == 1:
                    m, q = m2, q1 * q2
                elif m2 == 1:
                    m, q = m1, q1 * q2
                elif m1 == m2:
                    m, q = 1, q1 * q2 * m1
                else:
                    g = gcd(m1, m2)
                    m = (m1 // g) * (m2 // g)
                    q = q1 * q2 * g
                terms[m] = terms.get(m, Fraction(0)) + q
        return Scalar._make(terms)

    __rmul__ = __mul__

    def _conjugate_by_prime(self, p: int) -> "Scalar":
        return Scalar._make(
            {m: (-q if m % p == 0 else q) for m, q in self._terms.items()}
        )

    @staticmethod
    def _smallest_prime_factor(m: int) -> int:
        for p in _small_primes():
            if m % p == 0:
                return p
            if p * p > m:
                return m
        from sympy import primefactors

        return primefactors(m)[0]

    def __truediv__(self, other):
        o = Scalar.of(other)
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        num, den = self, o
        while not den.is_rational:
            m = min(m for m in den._terms if m != 1)
            p = Scalar._smallest_prime_factor(m)
            conj = den._conjugate_by_prime(p)
            num = num * conj
            den = den * conj
        d = den._terms[1]
        return Scalar._make({m: q / d for m, q in num._terms.items()})

    def __rtruediv__(self, other):
        return Scalar.of(other) / self

    # -- sign and order ----------------------------------------------------

    def sign(self) -> int:
        items = self._terms
        if not items:
            return 0
        if len(items) == 1:
            ((m, q),) = items.items()
            return 1 if q > 0 else -1
        if len(items) == 2:
            (m1, q1), (m2, q2) = items.items()
            s1 = 1 if q1 > 0 else -1
            s2 = 1 if q2 > 0 else -1
            if s1 == s2:
                return s1
            # opposite signs: q1*sqrt(m1) vs -q2*sqrt(m2); compare squares
            return s1 if q1 * q1 * m1 > q2 * q2 * m2 else s2
        prec = 48
        while prec <= 1 << 14:
            lo, hi = self.enclosure(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
        raise ArithmeticError(f"sign separation failed for {self}")

    def enclosure(self, prec: int) -> tuple[Fraction, Fraction]:
        """Certified rational bounds: lo <= value <= hi, shrinking with prec."""
        lo = hi = Fraction(0)
        unit = 1 << prec
        for m, q in self._terms.items():
            if m == 1:
                lo += q
                hi += q
                continue
            a = _root_floor(m, prec)
            rlo = Fraction(a, unit)
            rhi = Fraction(a + 1, unit)
            if q >= 0:
                lo += q * rlo
                hi += q * rhi
            else:
                lo += q * rhi
                hi += q * rlo
        return lo, hi

    def compare(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return Scalar.of(other)._terms == self._terms
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- output ------------------------------------------------------------

    def decimal(self, digits: int) -> str:
        """Certified decimal string with ``digits`` fractional digits.

        The printed value differs from the true one by less than one unit in
        the last printed place.
        """
        scale = 10**digits
        prec = 8
        while True:
            lo, hi = self.enclosure(prec)
            if (hi - lo) * scale < 1:
                break
            prec *= 2
        n = (lo.numerator * scale) // lo.denominator
        sign = "-" if n < 0 else ""
        n = abs(n)
        whole, frac = divmod(n, scale)
        if digits == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{str(frac).zfill(digits)}"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, q in self.terms():
            if m == 1:
                text = _format_fraction(abs(q))
            elif abs(q) == 1:
                text = f"sqrt({m})"
            else:
                text = f"{_format_fraction(abs(q))}*sqrt({m})"
            parts.append(("-" if q < 0 else "+", text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += sign + text
        return out

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def compare(a, b) -> str:
    """Exact trichotomy: 'less', 'equal' or 'greater'."""
    c = Scalar.of(a).compare(b)
    return "less" if c < 0 else ("equal" if c == 0 else "greater")


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical rendering produced by :meth:`Scalar.__str__`.

    Grammar: a sum of terms joined by ``+``/``-``; each term is a rational
    ``p`` or ``p/q``, or ``sqrt(m)`` optionally scaled as ``c*sqrt(m)``.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar string")
    # split into signed terms at top level (no parentheses nesting to track
    # beyond sqrt(...), which contains no signs)
    terms = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-(*/":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    total = Scalar(0)
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError(f"malformed scalar: {text!r}")
        if "sqrt(" in term:
            if "*" in term:
                coef_text, root_text = term.split("*", 1)
                coef = _parse_fraction(coef_text)
            else:
                coef, root_text = Fraction(1), term
            if not (root_text.startswith("sqrt(") and root_text.endswith(")")):
                raise ValueError(f"malformed scalar term: {term!r}")
            rad = _parse_fraction(root_text[5:-1])
            total = total + Scalar(sign * coef) * Scalar.root(rad)
        else:
            total = total + Scalar(sign * _parse_fraction(term))
    return total


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational: {text!r}") from exc


@dataclass(frozen=True)
class DyadicRational:
    """A reduced dyadic rational ``numerator / 2**exponent``.

    Invariant: ``exponent >= 0`` and the numerator is odd or zero (zero is
    stored with exponent 0).
    """

    numerator: int
    exponent: int

    @staticmethod
    def make(numerator: int, exponent: int) -> "DyadicRational":
        if numerator == 0:
            return DyadicRational(0, 0)
        while numerator % 2 == 0 and exponent > 0:
            numerator //= 2
            exponent -= 1
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        return DyadicRational(numerator, exponent)

    @staticmethod
    def zero() -> "DyadicRational":
        return DyadicRational(0, 0)

    @staticmethod
    def from_fraction(q: Fraction) -> "DyadicRational":
        d = q.denominator
        e = d.bit_length() - 1
        if d != 1 << e:
            raise ValueError(f"{q} is not dyadic")
        return DyadicRational.make(q.numerator, e)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self):
        return _format_fraction(self.as_fraction())


@dataclass(frozen=True)
class RationalInterval:
    """A closed interval with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q: Fraction) -> bool:
        return self.lo <= q <= self.hi

    def contains_open(self, q: Fraction) -> bool:
        return self.lo < q < self.hi

    def __str__(self):
        return f"[{_format_fraction(self.lo)}, {_format_fraction(self.hi)}]"
