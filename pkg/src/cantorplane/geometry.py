"""Exact plane geometry: points, rational segments, balls, and the
predicates the ball schemes and the forcing order are built from.

Every predicate reduces to signs of scalar expressions, compared through
squared distances so that no square root of a general scalar is ever needed.
All predicates are reentrant; points and segments are immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import Scalar

__all__ = [
    "Point",
    "Segment",
    "Ball",
    "dyadic_ball",
    "dist2",
    "balls_disjoint_closed",
    "closed_ball_inside_open",
    "closed_ball_inside_punctured",
    "point_in_open_ball",
    "point_in_closed_ball",
    "segment_dist2",
    "segment_meets_closed_ball",
    "point_on_segment",
    "segment_circle_intersections",
]


@dataclass(frozen=True)
class Point:
    """A plane point with exact scalar coordinates."""

    x: Scalar
    y: Scalar

    @staticmethod
    def rational(x, y) -> "Point":
        return Point(Scalar(Fraction(x)), Scalar(Fraction(y)))

    def __str__(self):
        return f"({self.x}, {self.y})"


def dist2(p: Point, q: Point) -> Scalar:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


@dataclass(frozen=True)
class Segment:
    """A nontrivial closed segment with rational endpoints."""

    ax: Fraction
    ay: Fraction
    bx: Fraction
    by: Fraction

    def __post_init__(self):
        for name in ("ax", "ay", "bx", "by"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if (self.ax, self.ay) == (self.bx, self.by):
            raise ValueError("segment endpoints coincide")

    @property
    def a(self) -> Point:
        return Point.rational(self.ax, self.ay)

    @property
    def b(self) -> Point:
        return Point.rational(self.bx, self.by)

    def length2(self) -> Fraction:
        return (self.bx - self.ax) ** 2 + (self.by - self.ay) ** 2

    def point_at(self, t) -> Point:
        """The point a + t*(b - a); t may be any scalar."""
        ts = Scalar.of(t)
        return Point(
            Scalar(self.ax) + ts * (self.bx - self.ax),
            Scalar(self.ay) + ts * (self.by - self.ay),
        )

    def key(self) -> tuple:
        return (self.ax, self.ay, self.bx, self.by)

    def __str__(self):
        return f"[({self.ax}, {self.ay}) .. ({self.bx}, {self.by})]"


def segment_dist2(seg: Segment, p: Point) -> Scalar:
    """Exact squared distance from a point to a closed segment."""
    dx = Fraction(seg.bx - seg.ax)
    dy = Fraction(seg.by - seg.ay)
    # parameter of the orthogonal projection, clamped to [0, 1]
    t = ((p.x - seg.ax) * dx + (p.y - seg.ay) * dy) / seg.length2()
    if t.sign() <= 0:
        return dist2(p, seg.a)
    if (t - 1).sign() >= 0:
        return dist2(p, seg.b)
    return dist2(p, seg.point_at(t))


def point_on_segment(seg: Segment, p: Point) -> bool:
    return segment_dist2(seg, p).is_zero()


@dataclass(frozen=True)
class Ball:
    """An open ball with exact center and positive rational radius."""

    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    def __str__(self):
        return f"B({self.center}, {self.radius})"


def dyadic_ball(center: Point, exponent: int) -> Ball:
    """The ball of radius 2**-exponent around the center."""
    return Ball(center, Fraction(1, 2**exponent) if exponent >= 0 else Fraction(2 ** (-exponent)))


def point_in_open_ball(p: Point, b: Ball) -> bool:
    return (dist2(p, b.center) - b.radius**2).sign() < 0


def point_in_closed_ball(p: Point, b: Ball) -> bool:
    return (dist2(p, b.center) - b.radius**2).sign() <= 0


def balls_disjoint_closed(b1: Ball, b2: Ball) -> bool:
    """Closed disjointness: the distance of the centers exceeds the sum of
    the radii, decided on squares."""
    gap = dist2(b1.center, b2.center) - (b1.radius + b2.radius) ** 2
    return gap.sign() > 0


def closed_ball_inside_open(inner: Ball, outer: Ball) -> bool:
    """cl(inner) inside the open outer ball: dist + r_in < r_out."""
    if inner.radius >= outer.radius:
        return False
    margin = outer.radius - inner.radius
    return (dist2(inner.center, outer.center) - margin**2).sign() < 0


def closed_ball_inside_punctured(inner: Ball, outer: Ball) -> bool:
    """cl(inner) inside the open outer ball with the outer center removed."""
    if not closed_ball_inside_open(inner, outer):
        return False
    return (dist2(inner.center, outer.center) - inner.radius**2).sign() > 0


def segment_meets_closed_ball(seg: Segment, b: Ball) -> bool:
    """Whether the closed segment meets the closed ball (tangency counts)."""
    return (segment_dist2(seg, b.center) - b.radius**2).sign() <= 0


def segment_circle_intersections(
    seg: Segment, cx: Fraction, cy: Fraction, r2: Fraction
) -> list[Point]:
    """Exact intersection points of a rational segment with the circle of
    rational center and rational squared radius; at most two points, with
    coordinates in a quadratic extension."""
    dx = seg.bx - seg.ax
    dy = seg.by - seg.ay
    fx = seg.ax - cx
    fy = seg.ay - cy
    qa = Fraction(dx * dx + dy * dy)
    qb = 2 * Fraction(fx * dx + fy * dy)
    qc = Fraction(fx * fx + fy * fy) - Fraction(r2)
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    root = Scalar.root(disc)
    out = []
    for sgn in (-1, 1):
        t = (Scalar(-qb) + sgn * root) / (2 * qa)
        if t.sign() >= 0 and (t - 1).sign() <= 0:
            out.append(seg.point_at(t))
        if disc == 0:
            break
    # dedupe the tangent double root
    if len(out) == 2 and out[0] == out[1]:
        out = out[:1]
    return out
