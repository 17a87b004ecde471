"""Toric Fano surfaces as reflexive polygons, with divisor supports.

A toric Fano surface is encoded by its reflexive lattice polygon; the
lattice points of the polygon index the monomial sections of the
anticanonical bundle. An anticanonical (or pluri-anticanonical)
divisor enters all stability computations only through the set of
lattice weights whose section coefficients are nonzero, so divisors
are modeled by that support set alone.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .geometry import (
    ORIGIN,
    Degenerate,
    Hull,
    Location,
    Point,
    Polygon,
    convex_hull,
    edge_outer_normals,
    pt,
    scaled_lattice_points,
    sorted_points,
)


def lattice_gcd(v: Point) -> int:
    """gcd of the components of a lattice vector."""
    if not v.is_lattice():
        raise ValueError(f"{v} is not a lattice vector")
    return math.gcd(abs(v.x.numerator), abs(v.y.numerator))


@dataclass(frozen=True)
class ToricFano:
    """Reflexive lattice polygon plus its lattice-point weight set."""

    polygon: Polygon
    weights: frozenset[Point]

    @property
    def barycenter(self) -> Point:
        return self.polygon.centroid()


def make_toric_fano(vertices: Iterable[Point]) -> ToricFano:
    """Validate and build a toric Fano surface from lattice vertices.

    Rejects non-lattice input, degenerate hulls, polygons that do not
    contain the origin strictly, and non-reflexive polygons (an edge
    whose primitive outer normal n fails <n, v> = 1 on the edge).
    """
    verts = list(vertices)
    for v in verts:
        if not v.is_lattice():
            raise ValueError(f"vertex {v} is not a lattice point")
    hull = convex_hull(verts)
    if isinstance(hull, Degenerate):
        raise ValueError("vertices span a degenerate polygon")
    if hull.contains(ORIGIN) is not Location.INTERIOR:
        raise ValueError("the origin must lie strictly inside the polygon")
    for (a, b), n in zip(hull.edges(), edge_outer_normals(hull)):
        if n.dot(a) != 1 or n.dot(b) != 1:
            raise ValueError(
                f"polygon is not reflexive: edge {a}-{b} does not lie "
                "on a lattice height-1 line"
            )
    return ToricFano(polygon=hull, weights=scaled_lattice_points(hull, 1))


@dataclass(frozen=True)
class DivisorSupport:
    """Support data of a divisor in the m-th anticanonical system.

    Holds the multiplicity m and the subset of P cap (1/m)Z^2 where
    the defining section has nonzero coefficients. Coefficient
    magnitudes never matter, only the zero pattern.
    """

    m: int
    points: frozenset[Point]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("multiplicity m must be a positive integer")
        if not self.points:
            raise ValueError("a divisor support cannot be empty")
        object.__setattr__(self, "points", frozenset(self.points))

    def hull(self) -> Hull:
        """Convex hull of the support weights (may be degenerate)."""
        return convex_hull(self.points)


def generic_support(fano: ToricFano, m: int = 1) -> DivisorSupport:
    """Support of a generic divisor: every coefficient nonzero."""
    return DivisorSupport(m=m, points=scaled_lattice_points(fano.polygon, m))


def support_excluding(
    fano: ToricFano, m: int, excluded: Iterable[Point]
) -> DivisorSupport:
    """All scaled lattice points minus an excluded set.

    Models sections constrained to vanish on prescribed weights, e.g.
    every section vanishing at the fixed point of a chosen vertex.
    """
    all_points = scaled_lattice_points(fano.polygon, m)
    excluded = set(excluded)
    for q in excluded:
        if q not in all_points:
            raise ValueError(
                f"excluded point {q} is not a lattice point of the polygon"
            )
    remaining = all_points - excluded
    if not remaining:
        raise ValueError("exclusion removes every support point")
    return DivisorSupport(m=m, points=frozenset(remaining))


def _adjacent_vertices(poly: Polygon, v: Point) -> list[Point]:
    vs = poly.vertices
    i = vs.index(v)
    return [vs[i - 1], vs[(i + 1) % len(vs)]]


def edge_run_exclusion(fano: ToricFano, m: int, v: Point, w: Point) -> DivisorSupport:
    """Exclude the m points running along edge [v, w] starting at v.

    The edge must have lattice length 1, so it carries exactly m+1
    points of (1/m)Z^2; the run keeps the far endpoint w. Divisors so
    constrained meet the torus-invariant curve of the opposite edge at
    the vertex fixed point with multiplicity m.
    """
    vs = fano.polygon.vertices
    if v not in vs or w not in vs:
        raise ValueError("edge endpoints must be vertices of the polygon")
    if w not in _adjacent_vertices(fano.polygon, v):
        raise ValueError(f"{v} and {w} are not adjacent vertices")
    step = w - v
    if lattice_gcd(step) != 1:
        raise ValueError(f"edge {v}-{w} must have lattice length 1")
    run = {v + step.scale(Fraction(k, m)) for k in range(m)}
    support = support_excluding(fano, m, run)
    # Smoothness at the vertex fixed point needs a nonzero coefficient
    # at the first lattice step from v along the other edge.
    other = next(z for z in _adjacent_vertices(fano.polygon, v) if z != w)
    inward = other - v
    check = v + inward.scale(Fraction(1, lattice_gcd(inward) * m))
    if check not in support.points:
        warnings.warn(
            f"support misses {check}; the family may contain no member "
            "smooth at the excluded vertex",
            stacklevel=2,
        )
    return support


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    fano: ToricFano
    notes: str


def _build_catalog() -> tuple[CatalogEntry, ...]:
    def entry(name: str, verts: list[tuple[int, int]], notes: str) -> CatalogEntry:
        return CatalogEntry(
            name=name,
            fano=make_toric_fano([pt(x, y) for x, y in verts]),
            notes=notes,
        )

    return (
        entry(
            "P2",
            [(1, 0), (0, 1), (-1, -1)],
            "projective plane; barycenter at the origin",
        ),
        entry(
            "P1xP1",
            [(1, 1), (-1, 1), (-1, -1), (1, -1)],
            "product of two projective lines; barycenter at the origin",
        ),
        entry(
            "BL1",
            [(0, -1), (-1, 0), (-1, 2), (2, -1)],
            "plane blown up in one point; barycenter (1/12, 1/12)",
        ),
        entry(
            "BL2",
            [(0, -1), (-1, 0), (-1, 1), (1, 1), (1, -1)],
            "plane blown up in two points; barycenter (2/21, 2/21)",
        ),
        entry(
            "BL3",
            [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
            "plane blown up in three points; centrally symmetric hexagon",
        ),
    )


_CATALOG: tuple[CatalogEntry, ...] | None = None


def catalog() -> tuple[CatalogEntry, ...]:
    """The built-in polygons used across the worked examples."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def catalog_lookup(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    known = ", ".join(e.name for e in catalog())
    raise KeyError(f"unknown polytope {name!r}; catalog has: {known}")


def catalog_names() -> list[str]:
    return [e.name for e in catalog()]


def sorted_support(support: DivisorSupport) -> list[Point]:
    """Support points in deterministic lexicographic order."""
    return sorted_points(support.points)
