"""Job documents and deterministic reports.

A job is a small JSON document selecting a polygon (catalog name or
explicit lattice vertices), a divisor support, the multiplicity m, and
optionally a degeneration direction, a cone parameter and an oracle
search bound. Rationals travel as bare integers or "p/q" strings so
every value round-trips exactly; decimal renderings are attached to
reports for human consumption only and never feed back into any
computation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Union

from .geometry import Degenerate, Point, pt, sorted_points
from .stability import (
    BetaInterval,
    beta_interval,
    brute_force_threshold,
    futaki_line,
    log_futaki,
    q_membership,
    q_point,
    r_invariant,
    stability_threshold,
)
from .toric import (
    DivisorSupport,
    ToricFano,
    catalog_lookup,
    catalog_names,
    edge_run_exclusion,
    generic_support,
    sorted_support,
    support_excluding,
)


class JobError(ValueError):
    """Malformed or inconsistent job input, with a field diagnostic."""


@dataclass(frozen=True)
class ExcludeSupport:
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(sorted_points(set(self.points))))


@dataclass(frozen=True)
class EdgeRunSupport:
    v: Point
    w: Point


SupportSpec = Union[str, ExcludeSupport, EdgeRunSupport]


@dataclass(frozen=True)
class JobSpec:
    polytope: Union[str, tuple[Point, ...]]
    support: SupportSpec = "generic"
    m: int = 1
    lam: Point | None = None
    beta: Fraction | None = None
    oracle_bound: int | None = None


def _parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise JobError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise JobError(
            f"{where}: floating point is not accepted; write the exact "
            'value as "p/q"'
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise JobError(f"{where}: malformed rational {value!r} ({exc})") from None
    raise JobError(f"{where}: expected an integer or a 'p/q' string")


def _parse_point(value: Any, where: str) -> Point:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise JobError(f"{where}: expected a 2-element [x, y] pair")
    return Point(
        _parse_rational(value[0], f"{where}[0]"),
        _parse_rational(value[1], f"{where}[1]"),
    )


def _parse_positive_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise JobError(f"{where}: expected a positive integer")
    return value


def _parse_support(value: Any) -> SupportSpec:
    if value == "generic":
        return "generic"
    if isinstance(value, dict):
        if set(value) == {"exclude"}:
            raw = value["exclude"]
            if not isinstance(raw, list) or not raw:
                raise JobError("support.exclude: expected a nonempty list of points")
            points = tuple(
                _parse_point(p, f"support.exclude[{i}]") for i, p in enumerate(raw)
            )
            return ExcludeSupport(points)
        if set(value) == {"edge_run"}:
            run = value["edge_run"]
            if not isinstance(run, dict) or set(run) != {"v", "w"}:
                raise JobError("support.edge_run: expected an object with 'v' and 'w'")
            return EdgeRunSupport(
                v=_parse_point(run["v"], "support.edge_run.v"),
                w=_parse_point(run["w"], "support.edge_run.w"),
            )
    raise JobError(
        'support: expected "generic", {"exclude": [...]} or '
        '{"edge_run": {"v": ..., "w": ...}}'
    )


def job_from_obj(obj: Any) -> JobSpec:
    """Validate a decoded job document."""
    if not isinstance(obj, dict):
        raise JobError("job document must be a JSON object")
    known = {"polytope", "support", "m", "lambda", "beta", "oracle_bound"}
    unknown = set(obj) - known
    if unknown:
        raise JobError(f"unknown job fields: {', '.join(sorted(unknown))}")
    if "polytope" not in obj:
        raise JobError("polytope: field is required")

    raw_poly = obj["polytope"]
    polytope: Union[str, tuple[Point, ...]]
    if isinstance(raw_poly, str):
        if raw_poly not in catalog_names():
            raise JobError(
                f"polytope: unknown catalog name {raw_poly!r}; "
                f"known names: {', '.join(catalog_names())}"
            )
        polytope = raw_poly
    elif isinstance(raw_poly, list):
        verts = tuple(
            _parse_point(p, f"polytope[{i}]") for i, p in enumerate(raw_poly)
        )
        for i, v in enumerate(verts):
            if not v.is_lattice():
                raise JobError(f"polytope[{i}]: vertices must be lattice points")
        polytope = verts
    else:
        raise JobError("polytope: expected a catalog name or a vertex list")

    support = _parse_support(obj.get("support", "generic"))
    m = _parse_positive_int(obj.get("m", 1), "m")

    lam = None
    if obj.get("lambda") is not None:
        lam = _parse_point(obj["lambda"], "lambda")
        if not lam.is_lattice():
            raise JobError("lambda: expected an integer pair")

    beta = None
    if obj.get("beta") is not None:
        beta = _parse_rational(obj["beta"], "beta")

    oracle_bound = None
    if obj.get("oracle_bound") is not None:
        oracle_bound = _parse_positive_int(obj["oracle_bound"], "oracle_bound")

    return JobSpec(
        polytope=polytope,
        support=support,
        m=m,
        lam=lam,
        beta=beta,
        oracle_bound=oracle_bound,
    )


def parse_job(text: str) -> JobSpec:
    """Parse a JSON job document into a validated JobSpec."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError(f"invalid JSON: {exc}") from None
    return job_from_obj(obj)


def _rational_repr(x: Fraction) -> Union[int, str]:
    return x.numerator if x.denominator == 1 else str(x)


def _point_repr(p: Point) -> list:
    return [_rational_repr(p.x), _rational_repr(p.y)]


def job_to_obj(job: JobSpec) -> dict:
    obj: dict[str, Any] = {}
    if isinstance(job.polytope, str):
        obj["polytope"] = job.polytope
    else:
        obj["polytope"] = [_point_repr(v) for v in job.polytope]
    if job.support == "generic":
        obj["support"] = "generic"
    elif isinstance(job.support, ExcludeSupport):
        obj["support"] = {"exclude": [_point_repr(p) for p in job.support.points]}
    else:
        obj["support"] = {
            "edge_run": {"v": _point_repr(job.support.v), "w": _point_repr(job.support.w)}
        }
    obj["m"] = job.m
    if job.lam is not None:
        obj["lambda"] = _point_repr(job.lam)
    if job.beta is not None:
        obj["beta"] = _rational_repr(job.beta)
    if job.oracle_bound is not None:
        obj["oracle_bound"] = job.oracle_bound
    return obj


def serialize_job(job: JobSpec) -> str:
    return json.dumps(job_to_obj(job), indent=2) + "\n"


@dataclass(frozen=True)
class ResolvedJob:
    name: str | None
    fano: ToricFano
    support: DivisorSupport


def resolve_job(job: JobSpec) -> ResolvedJob:
    """Build the surface and the divisor support a job refers to."""
    if isinstance(job.polytope, str):
        entry = catalog_lookup(job.polytope)
        name: str | None = job.polytope
        fano = entry.fano
    else:
        from .toric import make_toric_fano

        name = None
        fano = make_toric_fano(job.polytope)
    if job.support == "generic":
        support = generic_support(fano, job.m)
    elif isinstance(job.support, ExcludeSupport):
        support = support_excluding(fano, job.m, job.support.points)
    else:
        support = edge_run_exclusion(fano, job.m, job.support.v, job.support.w)
    return ResolvedJob(name=name, fano=fano, support=support)


# ---------------------------------------------------------------- reports


def _approx(x: Fraction) -> str:
    return format(float(x), ".12g")


def _rat_field(x: Fraction) -> dict:
    return {"exact": str(x), "approx": _approx(x)}


def _point_field(p: Point) -> dict:
    return {
        "exact": [str(p.x), str(p.y)],
        "approx": [_approx(p.x), _approx(p.y)],
    }


def _int_pair(p: Point) -> list[int]:
    return [p.x.numerator, p.y.numerator]


def _interval_field(iv: BetaInterval) -> dict:
    return {
        "lower": _rat_field(iv.lower),
        "upper": _rat_field(iv.upper),
        "empty": iv.empty,
    }


@dataclass(frozen=True)
class Report:
    """Deterministic result bundle for one job."""

    data: dict = field(compare=False)

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2) + "\n"

    def to_table(self) -> str:
        rows: list[tuple[str, str]] = []

        def walk(prefix: str, value: Any) -> None:
            if isinstance(value, dict):
                if set(value) == {"exact", "approx"}:
                    exact, approx = value["exact"], value["approx"]
                    if isinstance(exact, list):
                        rows.append(
                            (prefix, f"({exact[0]}, {exact[1]})"
                             f"  ~ ({approx[0]}, {approx[1]})")
                        )
                    else:
                        rows.append((prefix, f"{exact}  ~ {approx}"))
                    return
                for k, v in value.items():
                    walk(f"{prefix}.{k}" if prefix else k, v)
                return
            if isinstance(value, list):
                rows.append((prefix, json.dumps(value)))
                return
            rows.append((prefix, json.dumps(value)))

        walk("", self.data)
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def run_job(job: JobSpec) -> Report:
    """Evaluate every engine quantity a job asks for.

    The threshold report and the ray invariant are always included;
    the per-lambda weight line and interval appear when the job fixes
    a direction, and the brute-force scan when it fixes a bound.
    """
    resolved = resolve_job(job)
    fano, support = resolved.fano, resolved.support
    barycenter = fano.barycenter
    report = stability_threshold(fano, support)

    data: dict[str, Any] = {
        "polytope": resolved.name
        if resolved.name is not None
        else [_int_pair(v) for v in fano.polygon.vertices],
        "vertices": [_int_pair(v) for v in fano.polygon.vertices],
        "m": job.m,
        "support": _support_section(job, support),
        "volume": _rat_field(fano.polygon.area()),
        "barycenter": _point_field(barycenter),
        "r_of_m": _rat_field(r_invariant(fano)),
    }

    central = barycenter.is_zero()
    data["q"] = None if central else _point_field(q_point(fano))
    data["q_in_support_hull"] = None if central else q_membership(fano, support)

    data["threshold"] = {
        "r_bar": _rat_field(report.r_bar),
        "l_bar": _rat_field(report.l_bar),
        "witness": _int_pair(report.witness),
        "sharp_at_r": report.sharp_at_r,
        "feasible": not report.interval.empty,
    }

    if job.lam is not None:
        line = futaki_line(fano, support, job.lam)
        norm_slope, norm_intercept = line.normalized()
        section = {
            "lambda": _int_pair(job.lam),
            "w_value": _rat_field(line.w_value),
            "c_value": _rat_field(line.c_value),
            "slope": _rat_field(line.slope),
            "intercept": _rat_field(line.intercept),
            "slope_over_volume": _rat_field(norm_slope),
            "intercept_over_volume": _rat_field(norm_intercept),
            "interval": _interval_field(beta_interval(fano, support, job.lam)),
        }
        if job.beta is not None:
            section["beta"] = _rat_field(job.beta)
            section["value_at_beta"] = _rat_field(
                log_futaki(fano, support, job.beta, job.lam)
            )
        data["futaki"] = section
    else:
        data["futaki"] = None

    if job.oracle_bound is not None:
        oracle = brute_force_threshold(fano, support, job.oracle_bound)
        data["oracle"] = {
            "bound": job.oracle_bound,
            "r_bar": _rat_field(oracle.value),
            "witness": _int_pair(oracle.witness),
            "matches_threshold": oracle.value == report.r_bar,
        }
    else:
        data["oracle"] = None

    return Report(data=data)


def _support_section(job: JobSpec, support: DivisorSupport) -> dict:
    if job.support == "generic":
        section: dict[str, Any] = {"kind": "generic"}
    elif isinstance(job.support, ExcludeSupport):
        section = {
            "kind": "exclude",
            "excluded": [_point_repr(p) for p in job.support.points],
        }
    else:
        section = {
            "kind": "edge_run",
            "v": _point_repr(job.support.v),
            "w": _point_repr(job.support.w),
        }
    section["size"] = len(support.points)
    hull = support.hull()
    if isinstance(hull, Degenerate):
        section["hull"] = [_point_repr(p) for p in hull.endpoints]
    else:
        section["hull"] = [_point_repr(p) for p in hull.vertices]
    return section


def with_overrides(
    job: JobSpec,
    *,
    m: int | None = None,
    lam: Point | None = None,
    beta: Fraction | None = None,
    oracle_bound: int | None = None,
) -> JobSpec:
    """Copy a job with selected fields replaced (used by the CLI)."""
    updates: dict[str, Any] = {}
    if m is not None:
        updates["m"] = m
    if lam is not None:
        updates["lam"] = lam
    if beta is not None:
        updates["beta"] = beta
    if oracle_bound is not None:
        updates["oracle_bound"] = oracle_bound
    return replace(job, **updates) if updates else job
