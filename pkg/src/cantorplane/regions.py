"""Region pairs in the plane, their shared boundaries, and exact boundary
point generation.

The supported region algebra is deliberately small: open axis-aligned
rectangles and open discs with rational data, finite unions whose closures
are pairwise disjoint, and the open exterior of such a union.  A region pair
couples a union U with the exterior V of its closure, so U and V are disjoint
open sets with dense union and the shared boundary S splits into primitive
features: rectangle edges and circles.  Anything beyond this raises
:class:`UnsupportedRegionError`; membership queries alone also accept finite
intersections.

The excluded countable set A consists of the points (p + sqrt(2), q) with
p, q rational.  Membership is exact and the canonical enumeration is pinned
bit-exactly below.

Boundary points are produced together with a witness segment crossing from
U to V through the point, which places them in the dense set of two-sided
boundary points.  All generators are deterministic; the countable family T
of producible points is fixed by the schedules themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Optional, Union

from .errors import UnsupportedRegionError
from .geometry import Ball, Point, Segment, dist2, point_in_open_ball, segment_dist2
from .scalars import Scalar

__all__ = [
    "Disc",
    "Rect",
    "RegionUnion",
    "Exterior",
    "Intersection",
    "Region",
    "RegionPair",
    "region_from_spec",
    "pair_from_spec",
    "in_A",
    "rational_by_index",
    "a_point",
    "enumerate_A",
    "TPoint",
    "boundary_point_near",
    "candidates_near",
    "dense_t",
    "boundary_contains_segment",
]


@dataclass(frozen=True)
class Disc:
    """Open disc with rational center and rational squared radius."""

    cx: Fraction
    cy: Fraction
    r2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cx", Fraction(self.cx))
        object.__setattr__(self, "cy", Fraction(self.cy))
        object.__setattr__(self, "r2", Fraction(self.r2))
        if self.r2 <= 0:
            raise UnsupportedRegionError("disc needs positive squared radius")

    def contains(self, p: Point, closed: bool = False) -> bool:
        d = dist2(p, Point.rational(self.cx, self.cy)) - self.r2
        return d.sign() <= 0 if closed else d.sign() < 0


@dataclass(frozen=True)
class Rect:
    """Open axis-aligned rectangle."""

    x1: Fraction
    y1: Fraction
    x2: Fraction
    y2: Fraction

    def __post_init__(self):
        for name in ("x1", "y1", "x2", "y2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise UnsupportedRegionError("rectangle needs x1 < x2 and y1 < y2")

    def contains(self, p: Point, closed: bool = False) -> bool:
        def within(v: Scalar, lo: Fraction, hi: Fraction) -> bool:
            a = (v - lo).sign()
            b = (v - hi).sign()
            return a >= 0 and b <= 0 if closed else a > 0 and b < 0

        return within(p.x, self.x1, self.x2) and within(p.y, self.y1, self.y2)

    def edges(self) -> list[tuple[Segment, tuple[Fraction, Fraction]]]:
        """Edges in canonical order (bottom, right, top, left), each with its
        inward unit normal."""
        return [
            (Segment(self.x1, self.y1, self.x2, self.y1), (Fraction(0), Fraction(1))),
            (Segment(self.x2, self.y1, self.x2, self.y2), (Fraction(-1), Fraction(0))),
            (Segment(self.x1, self.y2, self.x2, self.y2), (Fraction(0), Fraction(-1))),
            (Segment(self.x1, self.y1, self.x1, self.y2), (Fraction(1), Fraction(0))),
        ]


Primitive = Union[Disc, Rect]


@dataclass(frozen=True)
class RegionUnion:
    parts: tuple


@dataclass(frozen=True)
class Exterior:
    """Open exterior of the closure of the inner region."""

    inner: "Region"


@dataclass(frozen=True)
class Intersection:
    parts: tuple


Region = Union[Disc, Rect, RegionUnion, Exterior, Intersection]


def region_contains(region: Region, p: Point, closed: bool = False) -> bool:
    """Exact membership in a region term, or in its closure.

    Closure membership of an intersection is not decidable in this small
    algebra and raises.
    """
    if isinstance(region, (Disc, Rect)):
        return region.contains(p, closed)
    if isinstance(region, RegionUnion):
        return any(region_contains(r, p, closed) for r in region.parts)
    if isinstance(region, Intersection):
        if closed:
            raise UnsupportedRegionError("closure of an intersection is unsupported")
        return all(region_contains(r, p, False) for r in region.parts)
    if isinstance(region, Exterior):
        # exterior of a regular union: its closure is the complement of the
        # open inner region
        return not region_contains(region.inner, p, not closed)
    raise UnsupportedRegionError(f"unknown region term {region!r}")


@dataclass(frozen=True)
class CircleFeature:
    cx: Fraction
    cy: Fraction
    r2: Fraction

    def residual(self, p: Point) -> Scalar:
        return dist2(p, Point.rational(self.cx, self.cy)) - self.r2

    def on(self, p: Point) -> bool:
        return self.residual(p).is_zero()

    def meets_open_ball(self, center: Point, radius: Fraction) -> bool:
        d2 = dist2(center, Point.rational(self.cx, self.cy))
        lhs = d2 + self.r2 - radius * radius
        if lhs.sign() < 0:
            return True
        return (lhs * lhs - 4 * self.r2 * d2).sign() < 0


@dataclass(frozen=True)
class EdgeFeature:
    segment: Segment
    inward: tuple[Fraction, Fraction]
    depth: Fraction  # safe perpendicular travel staying inside the rectangle

    def on(self, p: Point) -> bool:
        return segment_dist2(self.segment, p).is_zero()

    def meets_open_ball(self, center: Point, radius: Fraction) -> bool:
        return (segment_dist2(self.segment, center) - radius * radius).sign() < 0


Feature = Union[CircleFeature, EdgeFeature]


class RegionPair:
    """A pair of disjoint open sets with dense union and decidable shared
    boundary: a finite union U of primitives with pairwise disjoint closures,
    against the open exterior V of its closure."""

    def __init__(self, primitives: list[Primitive]):
        if not primitives:
            raise UnsupportedRegionError("a region pair needs at least one primitive")
        _check_pairwise_disjoint_closures(primitives)
        self.primitives = tuple(primitives)
        self.U: Region = (
            primitives[0] if len(primitives) == 1 else RegionUnion(tuple(primitives))
        )
        self.V: Region = Exterior(self.U)
        self.features: tuple[Feature, ...] = tuple(_features_of(primitives))

    # -- membership, all exact ------------------------------------------

    def in_U(self, p: Point) -> bool:
        return region_contains(self.U, p, False)

    def in_V(self, p: Point) -> bool:
        return region_contains(self.V, p, False)

    def in_cl_U(self, p: Point) -> bool:
        return region_contains(self.U, p, True)

    def in_cl_V(self, p: Point) -> bool:
        return region_contains(self.V, p, True)

    def on_S(self, p: Point) -> bool:
        return self.in_cl_U(p) and self.in_cl_V(p)

    def meets_S(self, center: Point, radius: Fraction) -> bool:
        """Whether the open ball meets the shared boundary; exact."""
        return any(f.meets_open_ball(center, radius) for f in self.features)

    def bounding_box(self) -> tuple[int, int, int, int]:
        xlo = ylo = None
        xhi = yhi = None

        def stretch(xa, ya, xb, yb):
            nonlocal xlo, ylo, xhi, yhi
            xlo = xa if xlo is None else min(xlo, xa)
            ylo = ya if ylo is None else min(ylo, ya)
            xhi = xb if xhi is None else max(xhi, xb)
            yhi = yb if yhi is None else max(yhi, yb)

        for prim in self.primitives:
            if isinstance(prim, Rect):
                stretch(prim.x1, prim.y1, prim.x2, prim.y2)
            else:
                g = _int_radius_bound(prim.r2)
                stretch(prim.cx - g, prim.cy - g, prim.cx + g, prim.cy + g)
        import math

        return (
            math.floor(xlo),
            math.floor(ylo),
            math.ceil(xhi),
            math.ceil(yhi),
        )


def _check_pairwise_disjoint_closures(primitives: list[Primitive]) -> None:
    for i in range(len(primitives)):
        for j in range(i + 1, len(primitives)):
            if not _closures_disjoint(primitives[i], primitives[j]):
                raise UnsupportedRegionError(
                    "union primitives must have pairwise disjoint closures"
                )


def _closures_disjoint(a: Primitive, b: Primitive) -> bool:
    if isinstance(a, Rect) and isinstance(b, Rect):
        return a.x2 < b.x1 or b.x2 < a.x1 or a.y2 < b.y1 or b.y2 < a.y1
    if isinstance(a, Disc) and isinstance(b, Disc):
        # dist > r_a + r_b on squares: dist2 - r2a - r2b > 2*sqrt(r2a*r2b)
        d2 = Fraction((a.cx - b.cx) ** 2 + (a.cy - b.cy) ** 2)
        lhs = Scalar(d2 - a.r2 - b.r2)
        if lhs.sign() <= 0:
            return False
        return (lhs * lhs - 4 * a.r2 * b.r2).sign() > 0
    disc, rect = (a, b) if isinstance(a, Disc) else (b, a)
    dx = max(rect.x1 - disc.cx, Fraction(0), disc.cx - rect.x2)
    dy = max(rect.y1 - disc.cy, Fraction(0), disc.cy - rect.y2)
    return dx * dx + dy * dy > disc.r2


def _features_of(primitives) -> Iterator[Feature]:
    for prim in primitives:
        if isinstance(prim, Rect):
            depth = min(prim.x2 - prim.x1, prim.y2 - prim.y1) / 2
            for seg, inward in prim.edges():
                yield EdgeFeature(seg, inward, depth)
        else:
            yield CircleFeature(prim.cx, prim.cy, prim.r2)


def _int_radius_bound(r2: Fraction) -> int:
    """Smallest convenient integer g with g*g > r2."""
    return isqrt(r2.numerator // r2.denominator) + 1


# -- region specs ---------------------------------------------------------


def region_from_spec(spec: dict) -> Region:
    """Build a region term from its JSON form.

    Forms: {"disc": {"cx", "cy", "r2"}}, {"rect": {"x1", "y1", "x2", "y2"}},
    {"union": [..]}, {"intersection": [..]}, {"complement": ..} (the open
    exterior of the closure of the body).  Scalars are rational strings.
    """
    if not isinstance(spec, dict) or len(spec) != 1:
        raise UnsupportedRegionError(f"malformed region spec: {spec!r}")
    (kind, body), = spec.items()
    if kind == "disc":
        return Disc(_frac(body["cx"]), _frac(body["cy"]), _frac(body["r2"]))
    if kind == "rect":
        return Rect(
            _frac(body["x1"]), _frac(body["y1"]), _frac(body["x2"]), _frac(body["y2"])
        )
    if kind == "union":
        return RegionUnion(tuple(region_from_spec(s) for s in body))
    if kind == "intersection":
        return Intersection(tuple(region_from_spec(s) for s in body))
    if kind == "complement":
        return Exterior(region_from_spec(body))
    raise UnsupportedRegionError(f"unknown region kind {kind!r}")


def _frac(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UnsupportedRegionError(f"malformed rational {text!r}") from exc


def _flatten_primitives(region: Region) -> list[Primitive]:
    if isinstance(region, (Disc, Rect)):
        return [region]
    if isinstance(region, RegionUnion):
        out = []
        for part in region.parts:
            out.extend(_flatten_primitives(part))
        return out
    raise UnsupportedRegionError(
        "region pairs support only finite unions of discs and rectangles"
    )


def pair_from_spec(spec: dict) -> RegionPair:
    """Build a region pair from {"U": <region>, "V": <region>?}.

    V defaults to the exterior of the closure of U and, when given, must be
    exactly that (after flattening); other pairings are rejected rather than
    approximated.
    """
    if "U" not in spec:
        raise UnsupportedRegionError("region pair spec needs a U region")
    u_region = region_from_spec(spec["U"])
    primitives = _flatten_primitives(u_region)
    pair = RegionPair(primitives)
    if "V" in spec:
        v_region = region_from_spec(spec["V"])
        if not isinstance(v_region, Exterior):
            raise UnsupportedRegionError("V must be the exterior of the closure of U")
        if _flatten_primitives(v_region.inner) != primitives:
            raise UnsupportedRegionError("V must complement exactly the same U")
    return pair


# -- the excluded set A ---------------------------------------------------


def in_A(p: Point) -> bool:
    """Whether p = (q1 + sqrt(2), q2) with q1, q2 rational; exact."""
    if not p.y.is_rational:
        return False
    terms = dict(p.x.terms())
    radicals = {m: q for m, q in terms.items() if m != 1}
    return radicals == {2: Fraction(1)}


def rational_by_index(i: int) -> Fraction:
    """The canonical enumeration of the rationals.

    q_0 = 0; then for height h = 2, 3, ... and denominators b = 1 .. h-1 with
    numerator a = h - b coprime to b, emit -a/b then a/b.
    """
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i == 0:
        return Fraction(0)
    n = 0
    h = 2
    while True:
        for b in range(1, h):
            a = h - b
            if gcd(a, b) == 1:
                for q in (Fraction(-a, b), Fraction(a, b)):
                    n += 1
                    if n == i:
                        return q
        h += 1


def a_point(i: int) -> Point:
    """The i-th point of A, 1-based.

    Pairs (j, k) of rational indices are ordered by j + k, then by j; the
    point is (q_j + sqrt(2), q_k).
    """
    if i < 1:
        raise ValueError("A-point indices are 1-based")
    # invert the diagonal pairing
    n = i - 1
    s = 0
    while (s + 1) * (s + 2) // 2 <= n:
        s += 1
    j = n - s * (s + 1) // 2
    k = s - j
    return Point(
        Scalar(rational_by_index(j)) + Scalar.root(2),
        Scalar(rational_by_index(k)),
    )


def enumerate_A(n: int) -> list[Point]:
    """First n points of A under the canonical pairing enumeration."""
    return [a_point(i) for i in range(1, n + 1)]


# -- boundary points with witnesses ---------------------------------------


@dataclass(frozen=True)
class TPoint:
    """A boundary point together with a witness segment that crosses from U
    to V through it, and a canonical provenance key."""

    point: Point
    witness: Segment
    key: tuple

    def __str__(self):
        return str(self.point)


def _rational_anchor(v: Scalar, prec: int = 24) -> Fraction:
    if v.is_rational:
        return v.as_fraction()
    lo, hi = v.enclosure(prec)
    return (lo + hi) / 2


def _dyadic_levels(anchor: Fraction, radius: Fraction) -> Iterator[Fraction]:
    """Deterministic dyadic schedule covering (anchor - radius, anchor + radius)
    with ever finer resolution; coarser points are not repeated."""
    j = 0
    while Fraction(1, 1 << j) > radius:
        j += 1
    first = j
    while True:
        step = Fraction(1, 1 << j)
        base = Fraction((anchor.numerator << j) // anchor.denominator, 1 << j)
        span = int(radius / step) + 1
        for k in range(-span, span + 1):
            if j > first and k % 2 == 0:
                continue
            yield base + k * step
        j += 1


def _circle_candidates(
    idx: int, feat: CircleFeature, center: Point, radius: Fraction
) -> Iterator[TPoint]:
    anchor = _rational_anchor(center.x)
    g = _int_radius_bound(feat.r2)
    for x0 in _dyadic_levels(anchor, radius):
        w = feat.r2 - (x0 - feat.cx) ** 2
        if w <= 0:
            continue
        ybase = Scalar(feat.cy)
        root = Scalar.root(w)
        for sgn in (1, -1):
            p = Point(Scalar(x0), ybase + sgn * root)
            if point_in_open_ball(p, Ball(center, radius)) and not in_A(p):
                witness = Segment(x0, feat.cy, x0, feat.cy + sgn * g)
                yield TPoint(p, witness, ("circle", idx, x0, sgn))


def _edge_candidates(
    idx: int, feat: EdgeFeature, center: Point, radius: Fraction
) -> Iterator[TPoint]:
    seg = feat.segment
    # anchor the schedule at the projection parameter of the ball center
    dxs = seg.bx - seg.ax
    dys = seg.by - seg.ay
    length2 = seg.length2()
    t_anchor = _rational_anchor(
        ((center.x - seg.ax) * dxs + (center.y - seg.ay) * dys) / length2
    )
    # in-ball parameters stay within radius/sqrt(length2) of the anchor;
    # sqrt(length2) >= min(1, length2) gives a rational cover
    t_radius = radius if length2 >= 1 else radius / length2
    ball = Ball(center, radius)
    for t0 in _dyadic_levels(t_anchor, t_radius):
        if not 0 < t0 < 1:
            continue
        px = seg.ax + t0 * dxs
        py = seg.ay + t0 * dys
        p = Point.rational(px, py)
        if point_in_open_ball(p, ball) and not in_A(p):
            h = feat.depth
            nx, ny = feat.inward
            witness = Segment(px - h * nx, py - h * ny, px + h * nx, py + h * ny)
            yield TPoint(p, witness, ("edge", idx, t0))


def candidates_near(
    pair: RegionPair, center: Point, radius: Fraction
) -> Iterator[TPoint]:
    """Deterministic stream of boundary points inside the open ball,
    interleaving features round-robin.  Infinite whenever the ball meets the
    boundary; the caller bounds consumption."""
    streams = []
    for idx, feat in enumerate(pair.features):
        if not feat.meets_open_ball(center, radius):
            continue
        if isinstance(feat, CircleFeature):
            streams.append(_circle_candidates(idx, feat, center, radius))
        else:
            streams.append(_edge_candidates(idx, feat, center, radius))
    while streams:
        for stream in list(streams):
            try:
                yield next(stream)
            except StopIteration:  # pragma: no cover - streams are infinite
                streams.remove(stream)


def boundary_point_near(
    pair: RegionPair, center: Point, radius: Fraction, search_cap: int = 4096
) -> Optional[TPoint]:
    """A boundary point with witness inside the open ball, or None exactly
    when the ball misses the boundary."""
    if not pair.meets_S(center, radius):
        return None
    for i, cand in enumerate(candidates_near(pair, center, radius)):
        return cand
    raise AssertionError("nonempty candidate stream terminated")  # pragma: no cover


def dense_t(pair: RegionPair, n: int) -> list[TPoint]:
    """First n points of the canonical dense sequence on the boundary,
    produced by shrinking grid balls over the bounding box."""
    out: list[TPoint] = []
    seen: set[tuple] = set()
    if n <= 0:
        return out
    xlo, ylo, xhi, yhi = pair.bounding_box()
    level = 0
    while len(out) < n:
        step = Fraction(1, 1 << level)
        rows = int((yhi - ylo) / step)
        cols = int((xhi - xlo) / step)
        for r in range(rows + 1):
            for c in range(cols + 1):
                center = Point.rational(xlo + c * step, ylo + r * step)
                cand = boundary_point_near(pair, center, step)
                if cand is not None and cand.key not in seen:
                    seen.add(cand.key)
                    out.append(cand)
                    if len(out) == n:
                        return out
        level += 1
    return out


def boundary_contains_segment(pair: RegionPair) -> Optional[Segment]:
    """A rational segment contained in the shared boundary when one exists.

    Polygonal boundary parts contain whole edges; boundaries made of circles
    only contain none (a line meets a circle in at most two points).
    """
    for feat in pair.features:
        if isinstance(feat, EdgeFeature):
            return feat.segment
    return None
