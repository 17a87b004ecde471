"""Standalone SVG renderings of a polygon with its divisor support.

The drawing shows the integer grid, the polygon boundary, one filled
disc per support point, a small marker per excluded point (labeled p
when a single polygon vertex is excluded), the shaded support hull,
and markers for the barycenter and the ray exit point Q. All styling
constants live in one record so emitted files are stable byte for
byte; this is the only module that touches floating point, and only
for pixel layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .geometry import Degenerate, Point, pt, sorted_points
from .jobs import JobSpec, resolve_job
from .stability import q_point
from .toric import generic_support


@dataclass(frozen=True)
class FigureStyle:
    scale: int = 40            # pixels per lattice unit
    margin_units: int = 1      # padding around the polygon, in lattice units
    background: str = "#ffffff"
    grid_color: str = "#cccccc"
    grid_width: float = 1.0
    axis_color: str = "#888888"
    axis_width: float = 1.0
    hull_fill: str = "#d9d9d9"
    boundary_color: str = "#000000"
    boundary_width: float = 2.0
    support_radius: float = 6.0
    support_color: str = "#000000"
    excluded_radius: float = 2.0
    excluded_color: str = "#000000"
    marker_radius: float = 3.0
    barycenter_color: str = "#cc2222"
    q_color: str = "#2222cc"
    label_offset: float = 8.0
    font_size: int = 14
    font_family: str = "sans-serif"


DEFAULT_STYLE = FigureStyle()


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


class _Frame:
    """Lattice-to-pixel transform with a flipped y axis."""

    def __init__(self, poly, style: FigureStyle) -> None:
        minx, miny, maxx, maxy = poly.bounding_box()
        pad = style.margin_units
        self.x0 = float(minx) - pad
        self.y1 = float(maxy) + pad
        self.scale = style.scale
        self.width = (float(maxx) - float(minx) + 2 * pad) * style.scale
        self.height = (float(maxy) - float(miny) + 2 * pad) * style.scale
        self.ix = range(int(float(minx)) - pad, int(float(maxx)) + pad + 1)
        self.iy = range(int(float(miny)) - pad, int(float(maxy)) + pad + 1)

    def px(self, p: Point) -> tuple[float, float]:
        return (
            (float(p.x) - self.x0) * self.scale,
            (self.y1 - float(p.y)) * self.scale,
        )


def _circle(x: float, y: float, r: float, fill: str, cls: str) -> str:
    return (
        f'<circle class="{cls}" cx="{_fmt(x)}" cy="{_fmt(y)}" '
        f'r="{_fmt(r)}" fill="{fill}"/>'
    )


def _line(x1, y1, x2, y2, color: str, width: float, cls: str) -> str:
    return (
        f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
        f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{color}" '
        f'stroke-width="{_fmt(width)}"/>'
    )


def _poly_points(frame: _Frame, points) -> str:
    return " ".join(",".join(_fmt(c) for c in frame.px(p)) for p in points)


def _text(x: float, y: float, content: str, style: FigureStyle, cls: str) -> str:
    return (
        f'<text class="{cls}" x="{_fmt(x)}" y="{_fmt(y)}" '
        f'font-size="{style.font_size}" font-family="{style.font_family}" '
        f'text-anchor="end">{content}</text>'
    )


def render_figure(job: JobSpec, style: FigureStyle = DEFAULT_STYLE) -> str:
    """Render a job's polygon and support as an SVG document string."""
    resolved = resolve_job(job)
    fano, support = resolved.fano, resolved.support
    poly = fano.polygon
    frame = _Frame(poly, style)

    parts: list[str] = []
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(frame.width)}" height="{_fmt(frame.height)}" '
        f'viewBox="0 0 {_fmt(frame.width)} {_fmt(frame.height)}">'
    )
    parts.append(
        f'<rect width="{_fmt(frame.width)}" height="{_fmt(frame.height)}" '
        f'fill="{style.background}"/>'
    )

    top, bottom = 0.0, frame.height
    left, right = 0.0, frame.width
    for gx in frame.ix:
        x, _ = frame.px(pt(gx, 0))
        parts.append(_line(x, top, x, bottom, style.grid_color, style.grid_width, "grid"))
    for gy in frame.iy:
        _, y = frame.px(pt(0, gy))
        parts.append(_line(left, y, right, y, style.grid_color, style.grid_width, "grid"))

    ox, oy = frame.px(pt(0, 0))
    parts.append(_line(ox, top, ox, bottom, style.axis_color, style.axis_width, "axis"))
    parts.append(_line(left, oy, right, oy, style.axis_color, style.axis_width, "axis"))

    hull = support.hull()
    if isinstance(hull, Degenerate):
        if hull.kind == "segment":
            (x1, y1), (x2, y2) = (frame.px(p) for p in hull.endpoints)
            parts.append(
                _line(x1, y1, x2, y2, style.hull_fill, style.boundary_width,
                      "support-hull")
            )
    else:
        parts.append(
            f'<polygon class="support-hull" '
            f'points="{_poly_points(frame, hull.vertices)}" '
            f'fill="{style.hull_fill}"/>'
        )

    parts.append(
        f'<polygon class="boundary" points="{_poly_points(frame, poly.vertices)}" '
        f'fill="none" stroke="{style.boundary_color}" '
        f'stroke-width="{_fmt(style.boundary_width)}"/>'
    )

    for p in sorted_points(support.points):
        x, y = frame.px(p)
        parts.append(_circle(x, y, style.support_radius, style.support_color, "support"))

    excluded = sorted_points(
        generic_support(fano, support.m).points - support.points
    )
    for p in excluded:
        x, y = frame.px(p)
        parts.append(
            _circle(x, y, style.excluded_radius, style.excluded_color, "excluded")
        )
    if len(excluded) == 1 and excluded[0] in poly.vertices:
        x, y = frame.px(excluded[0])
        parts.append(
            _text(x - style.label_offset / 2, y - style.label_offset, "p", style,
                  "excluded-label")
        )

    barycenter = fano.barycenter
    bx, by = frame.px(barycenter)
    parts.append(
        _circle(bx, by, style.marker_radius, style.barycenter_color, "centroid")
    )
    if not barycenter.is_zero():
        q = q_point(fano)
        qx, qy = frame.px(q)
        parts.append(_circle(qx, qy, style.marker_radius, style.q_color, "qpoint"))
        parts.append(
            _text(qx - style.label_offset / 2, qy + style.label_offset * 1.5, "Q",
                  style, "q-label")
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_figure(
    job: JobSpec, out: str | Path | None = None, style: FigureStyle = DEFAULT_STYLE
) -> str:
    """Render a figure and, when a path is given, write it there."""
    svg = render_figure(job, style)
    if out is not None:
        Path(out).write_text(svg, encoding="utf-8")
    return svg
