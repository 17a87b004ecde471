"""Log stability weights of toric degenerations and cone-angle bounds.

For a toric Fano surface with polygon P and a divisor support with
weight hull H, a one-parameter subgroup lambda of the torus produces a
product degeneration whose stability weight is affine in the cone
parameter beta:

    F(beta) = -[beta * <Pc, lambda> + (1 - beta) * W(lambda)] * Vol(P)

with Pc the barycenter of P and W the support function of H. Negative
F for every lambda is necessary for a conical Kaehler-Einstein metric
of angle 2*pi*beta along the divisor, so intersecting the negativity
sets over all lambda yields the sharpest upper bound on the angle that
toric degenerations can certify. That intersection is computed exactly
here, together with the greatest lower Ricci bound of the surface via
the barycenter ray construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    ORIGIN,
    Degenerate,
    Point,
    Polygon,
    edge_outer_normals,
    hull_contains,
    primitive_vector,
    pt,
    ray_exit,
    support_value,
)
from .toric import DivisorSupport, ToricFano

BETA_ONE = Fraction(1)
BETA_ZERO = Fraction(0)


@dataclass(frozen=True)
class FutakiLine:
    """The stability weight as an affine function of the cone parameter.

    F(beta) = slope * beta + intercept, with
      slope     = (w_value - c_value) * volume
      intercept = -w_value * volume
    where w_value is the support value of the divisor hull at lambda,
    c_value the pairing of the barycenter with lambda, and volume the
    polygon area. F(1) = -c_value * volume is support independent.
    """

    slope: Fraction
    intercept: Fraction
    volume: Fraction
    w_value: Fraction
    c_value: Fraction

    def evaluate(self, beta: Fraction) -> Fraction:
        return self.slope * beta + self.intercept

    def normalized(self) -> tuple[Fraction, Fraction]:
        """(slope, intercept) of F divided by the positive volume factor."""
        return (self.slope / self.volume, self.intercept / self.volume)


@dataclass(frozen=True)
class BetaInterval:
    """Solution set of F(beta) < 0 within (0, 1], by its endpoints.

    Feasible beta satisfy lower < beta < upper, clamped to (0, 1];
    upper == 1 means no binding upper constraint inside the range.
    """

    lower: Fraction
    upper: Fraction
    empty: bool = False


EMPTY_INTERVAL = BetaInterval(BETA_ZERO, BETA_ZERO, empty=True)
WHOLE_INTERVAL = BetaInterval(BETA_ZERO, BETA_ONE)


@dataclass(frozen=True)
class ThresholdReport:
    """Result of optimizing the destabilizing threshold over all lambda.

    r_bar and l_bar are the endpoints of the intersected feasibility
    interval (both zero when it is empty), witness is a primitive
    integer lambda attaining the binding upper constraint, r_of_m the
    barycenter-ray invariant of the surface, and sharp_at_r records
    whether the support hull contains the ray exit point Q (when the
    barycenter is the origin there is no Q and the bound is trivially
    sharp).
    """

    r_bar: Fraction
    l_bar: Fraction
    witness: Point
    r_of_m: Fraction
    sharp_at_r: bool
    interval: BetaInterval


@dataclass(frozen=True)
class OracleResult:
    """Brute-force threshold scan outcome."""

    value: Fraction
    witness: Point


def futaki_line(fano: ToricFano, support: DivisorSupport, lam: Point) -> FutakiLine:
    """Exact coefficients of F(beta) for one degeneration direction."""
    if lam.is_zero():
        raise ValueError("lambda must be a nonzero vector")
    volume = fano.polygon.area()
    c_value = fano.barycenter.dot(lam)
    w_value = support_value(support.points, lam)
    return FutakiLine(
        slope=(w_value - c_value) * volume,
        intercept=-w_value * volume,
        volume=volume,
        w_value=w_value,
        c_value=c_value,
    )


def log_futaki(
    fano: ToricFano, support: DivisorSupport, beta: Fraction, lam: Point
) -> Fraction:
    """F(beta) for a cone parameter in [0, 1]."""
    beta = Fraction(beta)
    if not BETA_ZERO <= beta <= BETA_ONE:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    return futaki_line(fano, support, lam).evaluate(beta)


def beta_interval(
    fano: ToricFano, support: DivisorSupport, lam: Point
) -> BetaInterval:
    """Exact solution set of F(beta) < 0 within (0, 1].

    With W the support value and c the barycenter pairing, F < 0 is
    beta * (W - c) < W, which is an upper constraint when W - c > 0, a
    lower constraint when W - c < 0, and beta independent otherwise.
    """
    line = futaki_line(fano, support, lam)
    w, c = line.w_value, line.c_value
    d = w - c
    if d > 0:
        upper = w / d
        if upper <= 0:
            return EMPTY_INTERVAL
        return BetaInterval(BETA_ZERO, min(upper, BETA_ONE))
    if d < 0:
        lower = w / d
        if lower >= 1:
            return EMPTY_INTERVAL
        if lower <= 0:
            return WHOLE_INTERVAL
        return BetaInterval(lower, BETA_ONE)
    return WHOLE_INTERVAL if w > 0 else EMPTY_INTERVAL


def _sectors(hull) -> list[tuple[Point, Point, Point]]:
    """Normal fan of the support hull as (vertex, ray_lo, ray_hi) sectors.

    Rays are primitive integer vectors with cross(ray_lo, ray_hi) > 0,
    so every sector spans an angle strictly less than pi and any ray
    inside it is a positive combination of the two boundary rays.
    Degenerate hulls get an artificial refinement: a segment splits
    each closed half-plane along the segment direction, and a single
    point uses the four coordinate quadrants.
    """
    if isinstance(hull, Degenerate):
        if hull.kind == "point":
            q = hull.endpoints[0]
            axes = [pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)]
            return [(q, axes[i], axes[(i + 1) % 4]) for i in range(4)]
        a, b = hull.endpoints
        d = primitive_vector(b - a)
        p = d.perp()
        return [(b, -p, d), (b, d, p), (a, p, -d), (a, -d, -p)]
    assert isinstance(hull, Polygon)
    normals = edge_outer_normals(hull)
    sectors = []
    for i, v in enumerate(hull.vertices):
        sectors.append((v, normals[i - 1], normals[i]))
    return sectors


def _candidate_directions(fano: ToricFano, support: DivisorSupport) -> list[Point]:
    """Finite candidate set whose minimum realizes the infimum over lambda.

    The per-lambda threshold W(lambda) / (W(lambda) - c(lambda)) is
    0-homogeneous, and on each normal-fan sector of the support hull it
    restricts to a fractional-linear function of the cross-section
    parameter, hence is monotone between poles of its denominator.
    Its extrema over a sector therefore sit on the sector's boundary
    rays, or at a ray where the denominator vanishes; at such a pole
    ray the feasibility interval degenerates (whole or empty) and the
    constant-F case analysis applies directly. Collecting the sector
    rays and the in-sector denominator-zero rays is thus exact.
    """
    barycenter = fano.barycenter
    candidates: set[Point] = set()
    for v, n_lo, n_hi in _sectors(support.hull()):
        candidates.add(n_lo)
        candidates.add(n_hi)
        offset = v - barycenter
        if offset.is_zero():
            continue
        ray = primitive_vector(offset.perp())
        for rho in (ray, -ray):
            if n_lo.cross(rho) > 0 and rho.cross(n_hi) > 0:
                candidates.add(rho)
    return sorted(candidates, key=Point.as_tuple)


def stability_threshold(fano: ToricFano, support: DivisorSupport) -> ThresholdReport:
    """Intersect the feasibility intervals over all degeneration directions.

    Returns the interval endpoints, a primitive integer witness for the
    binding upper constraint (lexicographically smallest on ties), the
    barycenter-ray invariant for comparison, and the sharpness flag.
    An empty intersection is reported with both endpoints zero.
    """
    candidates = _candidate_directions(fano, support)
    intervals = [(lam, beta_interval(fano, support, lam)) for lam in candidates]

    witness: Point | None = None
    combined = WHOLE_INTERVAL
    for lam, iv in intervals:
        if iv.empty:
            witness = lam
            combined = EMPTY_INTERVAL
            break
    if not combined.empty:
        upper = BETA_ONE
        lower = BETA_ZERO
        for lam, iv in intervals:
            if iv.upper < upper:
                upper = iv.upper
                witness = lam
            lower = max(lower, iv.lower)
        if witness is None:
            # No binding upper constraint anywhere; report the smallest
            # candidate attaining the trivial bound 1.
            witness = candidates[0]
        if lower >= upper:
            combined = EMPTY_INTERVAL
        else:
            combined = BetaInterval(lower, upper)

    r_of_m = r_invariant(fano)
    if fano.barycenter == ORIGIN:
        sharp = True
    else:
        sharp = q_membership(fano, support)
    if combined.empty:
        r_bar = l_bar = BETA_ZERO
    else:
        r_bar, l_bar = combined.upper, combined.lower
    return ThresholdReport(
        r_bar=r_bar,
        l_bar=l_bar,
        witness=witness,
        r_of_m=r_of_m,
        sharp_at_r=sharp,
        interval=combined,
    )


def r_invariant(fano: ToricFano) -> Fraction:
    """Greatest lower Ricci bound via the barycenter ray.

    Writing the ray exit point as Q = (1 - t) * Pc with t > 1, the
    invariant equals |OQ| / |PcQ| = (t - 1) / t. A barycenter at the
    origin gives 1.
    """
    barycenter = fano.barycenter
    if barycenter == ORIGIN:
        return BETA_ONE
    q = ray_exit(fano.polygon, barycenter, -barycenter)
    ratio = q.x / barycenter.x if barycenter.x != 0 else q.y / barycenter.y
    t = 1 - ratio
    assert t > 1, "ray exit must lie beyond the origin"
    return (t - 1) / t


def q_point(fano: ToricFano) -> Point:
    """Boundary point where the ray from the barycenter through the
    origin leaves the polygon; undefined for a central barycenter."""
    barycenter = fano.barycenter
    if barycenter == ORIGIN:
        raise ValueError("Q is undefined when the barycenter is the origin")
    return ray_exit(fano.polygon, barycenter, -barycenter)


def q_membership(fano: ToricFano, support: DivisorSupport) -> bool:
    """Whether the support hull contains the ray exit point Q.

    Containment (boundary included) makes the generic-angle bound
    unimprovable by these degenerations; a missed Q forces a strictly
    smaller threshold.
    """
    q = q_point(fano)
    return hull_contains(support.hull(), q)


def brute_force_threshold(
    fano: ToricFano, support: DivisorSupport, bound: int
) -> OracleResult:
    """Independent threshold scan over all primitive integer lambda in a box.

    Minimizes the clamped upper endpoint of the feasibility interval
    over |lambda_i| <= bound (an empty interval counts as 0), keeping
    the lexicographically smallest witness on ties. The result can
    never fall below the exact optimum.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    best: Fraction | None = None
    best_lam: Point | None = None
    for ax in range(-bound, bound + 1):
        for ay in range(-bound, bound + 1):
            if (ax == 0 and ay == 0) or math.gcd(abs(ax), abs(ay)) != 1:
                continue
            iv = beta_interval(fano, support, pt(ax, ay))
            value = BETA_ZERO if iv.empty else iv.upper
            if best is None or value < best:
                best = value
                best_lam = pt(ax, ay)
    assert best is not None and best_lam is not None
    return OracleResult(value=best, witness=best_lam)
