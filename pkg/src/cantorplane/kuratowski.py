"""The alternating dyadic evaluation map on 2^N and its graph structure.

For a point x with counting function c (so c(j) is the j-th smallest support
index), the value is

    f(x) = sum over j of (-1)**c(j) * 2**(-j),

i.e. the parity of the j-th support position decides whether 2**(-j) is added
or subtracted.  An empty sum has value 0.  The map takes exact dyadic values
on finite-support points, admits tail-bound enclosures over cylinders, and
every t in [-1, 1] has a preimage reachable by a signed binary expansion.

Conventions pinned here:

* the expansion's tie-break takes sign +1 when the residual is exactly 0;
* position choice is always the least admissible index of the right parity;
* accumulation at a finite point d uses the closed interval
  [f(d) - 2**-k, f(d) + 2**-k] with k the support size, and the endpoint
  cases produce witnesses with a constant-sign tail;
* three-valued open-membership answers are True / False / None (unknown),
  reflecting semi-decidability at bounded depth for lazy points.

All operations on finite points are pure and thread-safe; operations forcing
lazy points follow the single-owner contract of :mod:`cantorplane.binary`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .binary import CantorPoint, Cylinder, FinitePoint, LazyPoint, cylinder_of
from .errors import DomainError
from .scalars import DyadicRational, RationalInterval

__all__ = [
    "eval_finite",
    "eval_support",
    "eval_cylinder",
    "lazy_enclosure",
    "fiber_point",
    "fiber_witness_in_cylinder",
    "accumulation_test",
    "FiberInterval",
    "closure_slice",
    "graph_neighborhood_member",
]


def eval_support(positions: tuple[int, ...]) -> Fraction:
    """Exact value of the alternating sum for a finite support tuple."""
    num = 0
    for j, pos in enumerate(positions, start=1):
        term = 1 << (len(positions) - j)
        num += term if pos % 2 == 0 else -term
    return Fraction(num, 1 << len(positions))


def eval_finite(d: FinitePoint) -> DyadicRational:
    """Exact dyadic value at a finite-support point."""
    return DyadicRational.from_fraction(eval_support(d.support))


def eval_cylinder(c: Cylinder) -> RationalInterval:
    """Certified enclosure of the value over a whole cylinder.

    With k ones in the prefix and partial sum P over them, every point of the
    cylinder evaluates within [P - 2**-k, P + 2**-k]: the remaining terms have
    indices beyond k and alternate with magnitudes summing to at most 2**-k.
    """
    ones = c.ones()
    partial = eval_support(ones)
    tail = Fraction(1, 1 << len(ones))
    return RationalInterval(partial - tail, partial + tail)


def lazy_enclosure(x: LazyPoint, terms: int) -> RationalInterval:
    """Enclosure of the value at a lazy point from its first ``terms``
    support elements; width 2**(1-terms)."""
    if terms < 0:
        raise DomainError("term count must be nonnegative")
    positions = tuple(x.element(j) for j in range(1, terms + 1))
    partial = eval_support(positions)
    tail = Fraction(1, 1 << terms)
    return RationalInterval(partial - tail, partial + tail)


def _expansion_positions(
    residual: Fraction, first_index: int, min_position: int
) -> Iterator[int]:
    """Positions of the signed binary expansion of ``residual``.

    Starting at term index ``first_index`` (term magnitude 2**-first_index),
    each step takes sign +1 when the residual is nonnegative (ties to +1),
    else -1, and emits the least position above both the previous one and
    ``min_position`` whose parity matches the sign (even for +1, odd for -1).
    Sound whenever |residual| <= 2**(1 - first_index).
    """
    prev = min_position
    j = first_index
    r = residual
    while True:
        sign = 1 if r >= 0 else -1
        pos = prev + 1
        want_even = sign == 1
        if (pos % 2 == 0) != want_even:
            pos += 1
        yield pos
        prev = pos
        r -= sign * Fraction(1, 1 << j)
        j += 1


def fiber_point(t: Fraction) -> LazyPoint:
    """A lazy point whose value is exactly t, for t in [-1, 1].

    The partial sum through j terms is within 2**-j of t for every j.
    """
    t = Fraction(t)
    if not -1 <= t <= 1:
        raise DomainError(f"target {t} outside [-1, 1]")
    return LazyPoint(_expansion_positions(t, 1, 0))


def accumulation_test(d: FinitePoint, t: Fraction) -> bool:
    """Whether d accumulates preimages of t: |t - f(d)| <= 2**-k exactly,
    with k the support size of d."""
    t = Fraction(t)
    if not -1 <= t <= 1:
        raise DomainError(f"target {t} outside [-1, 1]")
    gap = abs(t - eval_support(d.support))
    return gap <= Fraction(1, 1 << d.size)


def fiber_witness_in_cylinder(
    d: FinitePoint, t: Fraction, n: int
) -> Optional[LazyPoint]:
    """A lazy point y != d with y agreeing with d on [1..n] and value t.

    The support is d's support plus a tail of positions beyond n produced by
    the signed expansion of the residual t - f(d) starting at term index
    k_d + 1.  Returns None exactly when |t - f(d)| > 2**-k_d; the endpoint
    cases succeed with a constant-sign tail.
    """
    if n < d.max_index:
        raise DomainError(f"prefix length {n} below the support maximum of {d}")
    if not accumulation_test(d, t):
        return None
    residual = Fraction(t) - eval_support(d.support)
    tail = _expansion_positions(residual, d.size + 1, max(n, d.max_index))

    def positions():
        yield from d.support
        yield from tail

    return LazyPoint(positions())


@dataclass(frozen=True)
class FiberInterval:
    """The vertical closure slice above a finite point: the owner together
    with [f(owner) - 2**-k, f(owner) + 2**-k], k the owner's support size."""

    owner: FinitePoint
    interval: RationalInterval


def closure_slice(d: FinitePoint) -> FiberInterval:
    """The vertical interval adjoined above d in the closure of the graph.

    The closure equals the graph plus the union of {d} x closure_slice(d)
    over finite d; it is queried pointwise, never materialized.
    """
    value = eval_support(d.support)
    tail = Fraction(1, 1 << d.size)
    return FiberInterval(d, RationalInterval(value - tail, value + tail))


def graph_neighborhood_member(
    x: CantorPoint,
    cyl: Cylinder,
    values: RationalInterval,
    depth: int = 16,
) -> Optional[bool]:
    """Decide membership of x in the graph-topology basic open set given by
    an open box: the cylinder crossed with the open interval (values.lo,
    values.hi).

    For finite x the answer is exact.  For lazy x the first ``depth`` support
    elements are forced; the answer is None when the resulting value
    enclosure straddles an interval endpoint.
    """
    if not cyl.member(x):
        return False
    if isinstance(x, FinitePoint):
        return values.contains_open(eval_support(x.support))
    enc = lazy_enclosure(x, depth)
    if values.lo < enc.lo and enc.hi < values.hi:
        return True
    if enc.hi <= values.lo or enc.lo >= values.hi:
        return False
    return None
