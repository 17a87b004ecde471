"""Exact rational geometry for convex lattice polygons in the plane.

Every coordinate is a ``fractions.Fraction`` and every predicate
(containment, hull membership, ray intersection) is decided exactly;
no floating point enters any computation here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

# The only scalar type used by the core. Fraction already guarantees
# lowest terms, a positive denominator and exact arithmetic.
Rational = Fraction

RationalLike = Union[int, str, Fraction]


def _coerce(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError(
            "floating point coordinates are not supported; "
            "pass int, Fraction or a 'p/q' string"
        )
    return Fraction(value)


@dataclass(frozen=True)
class Point:
    """A point (or vector) of Q^2. Equality and hashing are exact."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "y", _coerce(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def scale(self, k: RationalLike) -> "Point":
        k = _coerce(k)
        return Point(k * self.x, k * self.y)

    def dot(self, other: "Point") -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> Fraction:
        return self.x * other.y - self.y * other.x

    def perp(self) -> "Point":
        """Rotate by +90 degrees."""
        return Point(-self.y, self.x)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_lattice(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


def pt(x: RationalLike, y: RationalLike) -> Point:
    """Shorthand constructor: pt(1, '2/3')."""
    return Point(_coerce(x), _coerce(y))


ORIGIN = pt(0, 0)


def orientation(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of triangle abc; > 0 means a left turn."""
    return (b - a).cross(c - a)


def sorted_points(points: Iterable[Point]) -> list[Point]:
    return sorted(points, key=Point.as_tuple)


def primitive_vector(v: Point) -> Point:
    """Scale a nonzero rational vector to its primitive integer form.

    The direction is preserved: denominators are cleared and the result
    divided by the gcd of its components.
    """
    if v.is_zero():
        raise ValueError("the zero vector has no primitive form")
    scale = math.lcm(v.x.denominator, v.y.denominator)
    nx = v.x.numerator * (scale // v.x.denominator)
    ny = v.y.numerator * (scale // v.y.denominator)
    g = math.gcd(abs(nx), abs(ny))
    return pt(nx // g, ny // g)


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Degenerate:
    """A convex hull with empty interior: one point or one segment."""

    endpoints: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.endpoints) not in (1, 2):
            raise ValueError("degenerate hull has one or two endpoints")

    @property
    def kind(self) -> str:
        return "point" if len(self.endpoints) == 1 else "segment"

    def contains(self, q: Point) -> bool:
        if self.kind == "point":
            return q == self.endpoints[0]
        a, b = self.endpoints
        if orientation(a, b, q) != 0:
            return False
        t = (q - a).dot(b - a)
        return 0 <= t <= (b - a).dot(b - a)


def _monotone_chain(points: Iterable[Point]) -> list[Point]:
    """Hull vertices, CCW, starting at the lexicographically smallest.

    Collinear non-vertex points are dropped. Returns fewer than three
    points when the hull has empty interior.
    """
    pts = sorted_points(set(points))
    if len(pts) == 1:
        return pts

    def build(seq: list[Point]) -> list[Point]:
        chain: list[Point] = []
        for p in seq:
            while len(chain) >= 2 and orientation(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return [pts[0], pts[-1]]
    return hull


@dataclass(frozen=True)
class Polygon:
    """Strictly convex polygon with a counterclockwise vertex tuple.

    Construction validates the vertex list: at least three distinct
    points, no three consecutive collinear, counterclockwise order.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise ValueError("a polygon needs at least three vertices")
        hull = _monotone_chain(vs)
        if len(hull) != len(vs):
            raise ValueError(
                "vertices are not in strictly convex position "
                "(repeated, collinear, or interior points)"
            )
        start = vs.index(hull[0])
        if tuple(vs[start:] + vs[:start]) != tuple(hull):
            raise ValueError("vertices are not in counterclockwise convex order")

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def area(self) -> Fraction:
        """Exact area by the shoelace formula."""
        acc = Fraction(0)
        for a, b in self.edges():
            acc += a.cross(b)
        return acc / 2

    def centroid(self) -> Point:
        """Area centroid via fan triangulation from the first vertex."""
        anchor = self.vertices[0]
        double_area = Fraction(0)
        sx = Fraction(0)
        sy = Fraction(0)
        for i in range(1, len(self.vertices) - 1):
            b = self.vertices[i]
            c = self.vertices[i + 1]
            t2 = (b - anchor).cross(c - anchor)
            double_area += t2
            sx += t2 * (anchor.x + b.x + c.x)
            sy += t2 * (anchor.y + b.y + c.y)
        return Point(sx / (3 * double_area), sy / (3 * double_area))

    def contains(self, q: Point) -> Location:
        """Classify a point by exact half-plane tests on every edge."""
        on_edge = False
        for a, b in self.edges():
            s = orientation(a, b, q)
            if s < 0:
                return Location.OUTSIDE
            if s == 0:
                on_edge = True
        return Location.BOUNDARY if on_edge else Location.INTERIOR

    def bounding_box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))


Hull = Union[Polygon, Degenerate]


def convex_hull(points: Iterable[Point]) -> Hull:
    """Convex hull with a deterministic minimal CCW vertex list.

    Hulls with empty interior are returned as a Degenerate marker
    rather than raising: sets of one or two (or collinear) points are
    legitimate inputs elsewhere.
    """
    pts = list(points)
    if not pts:
        raise ValueError("convex hull of an empty point set")
    hull = _monotone_chain(pts)
    if len(hull) == 1:
        return Degenerate((hull[0],))
    if len(hull) == 2:
        return Degenerate(tuple(hull))
    return Polygon(tuple(hull))


def hull_contains(hull: Hull, q: Point) -> bool:
    """Membership in a possibly degenerate hull (boundary counts)."""
    if isinstance(hull, Degenerate):
        return hull.contains(q)
    return hull.contains(q) is not Location.OUTSIDE


def scaled_lattice_points(poly: Polygon, m: int) -> frozenset[Point]:
    """All points of (1/m)Z^2 inside or on the polygon.

    Points keep their original coordinates (denominators dividing m);
    enumeration scans the bounding box with exact containment tests.
    """
    if m < 1:
        raise ValueError("scale factor m must be a positive integer")
    minx, miny, maxx, maxy = poly.bounding_box()
    out = set()
    for kx in range(math.ceil(minx * m), math.floor(maxx * m) + 1):
        for ky in range(math.ceil(miny * m), math.floor(maxy * m) + 1):
            q = Point(Fraction(kx, m), Fraction(ky, m))
            if poly.contains(q) is not Location.OUTSIDE:
                out.add(q)
    return frozenset(out)


def ray_exit(poly: Polygon, start: Point, direction: Point) -> Point:
    """Unique boundary point start + t*direction with t > 0.

    Requires the start point strictly inside the polygon; the exit is
    computed exactly by intersecting the ray with each edge's
    supporting line.
    """
    if direction.is_zero():
        raise ValueError("ray direction must be nonzero")
    if poly.contains(start) is not Location.INTERIOR:
        raise ValueError("ray origin must lie strictly inside the polygon")
    best_t: Fraction | None = None
    for a, b in poly.edges():
        edge = b - a
        denom = direction.cross(edge)
        if denom == 0:
            continue
        t = (a - start).cross(edge) / denom
        u = (a - start).cross(direction) / denom
        if t > 0 and 0 <= u <= 1:
            if best_t is None or t < best_t:
                best_t = t
    assert best_t is not None, "interior ray must exit through the boundary"
    return start + direction.scale(best_t)


def support_value(points: Iterable[Point], lam: Point) -> Fraction:
    """max over the set of the dot product with lam.

    Equals the same maximum over the convex hull of the set.
    """
    values = [p.dot(lam) for p in points]
    if not values:
        raise ValueError("support value of an empty point set")
    return max(values)


def edge_outer_normals(poly: Polygon) -> list[Point]:
    """Primitive integer outward normal of each edge, in CCW edge order.

    Requires rational vertices; denominators are cleared before the
    gcd normalization.
    """
    normals = []
    for a, b in poly.edges():
        e = b - a
        # Outward for a CCW boundary is the edge vector rotated by -90.
        normals.append(primitive_vector(Point(e.y, -e.x)))
    return normals
