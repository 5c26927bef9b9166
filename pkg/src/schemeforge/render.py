"""Deterministic SVG output of a :class:`DrawingModel`.

One user unit is one millimetre.  Model y grows upward, so coordinates are
negated on output instead of wrapping everything in a flipping transform
(which would mirror the text).
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from . import layout
from .geometry import Circle, Dot, DrawingModel, Rect, Segment, Text
from .model import LineStyle, format_mm

SVG_NS = "http://www.w3.org/2000/svg"
FONT_FAMILY = "sans-serif"


fmt = format_mm


def _bounds(model: DrawingModel) -> tuple[float, float, float, float] | None:
    xs: list[float] = []
    ys: list[float] = []

    def add(x: float, y: float) -> None:
        xs.append(x)
        ys.append(y)

    for gset in model.sets:
        for p in gset.primitives:
            if isinstance(p, (Circle, Dot)):
                r = p.diameter / 2
                add(p.center.x - r, p.center.y - r)
                add(p.center.x + r, p.center.y + r)
            elif isinstance(p, Segment):
                add(p.p1.x, p.p1.y)
                add(p.p2.x, p.p2.y)
            elif isinstance(p, Rect):
                add(p.origin.x, p.origin.y)
                add(p.origin.x + p.width, p.origin.y + p.height)
            elif isinstance(p, Text):
                w = len(p.content) * p.height * layout.CHAR_WIDTH_FACTOR
                x0 = p.anchor.x - (w / 2 if p.align == "middle" else 0)
                add(x0, p.anchor.y)
                add(x0 + w, p.anchor.y + p.height)
    if not xs:
        return None
    return min(xs), min(ys), max(xs), max(ys)


def _dash(style: LineStyle) -> str:
    return f' stroke-dasharray="{layout.DASH_ARRAY}"' if style is LineStyle.DASHED else ""


def _shape(p) -> str:
    if isinstance(p, Circle):
        return (f'<circle cx="{fmt(p.center.x)}" cy="{fmt(-p.center.y)}" '
                f'r="{fmt(p.diameter / 2)}"/>')
    if isinstance(p, Dot):
        return (f'<circle cx="{fmt(p.center.x)}" cy="{fmt(-p.center.y)}" '
                f'r="{fmt(p.diameter / 2)}" fill="#000" stroke="none"/>')
    if isinstance(p, Segment):
        return (f'<line x1="{fmt(p.p1.x)}" y1="{fmt(-p.p1.y)}" '
                f'x2="{fmt(p.p2.x)}" y2="{fmt(-p.p2.y)}"{_dash(p.style)}/>')
    if isinstance(p, Rect):
        weight = f' stroke-width="{fmt(layout.THICK_STROKE)}"' if p.thick else ""
        return (f'<rect x="{fmt(p.origin.x)}" y="{fmt(-(p.origin.y + p.height))}" '
                f'width="{fmt(p.width)}" height="{fmt(p.height)}"{weight}/>')
    if isinstance(p, Text):
        anchor = "middle" if p.align == "middle" else "start"
        baseline = "" if p.valign == "baseline" else f' dominant-baseline="{p.valign}"'
        return (f'<text x="{fmt(p.anchor.x)}" y="{fmt(-p.anchor.y)}" '
                f'font-size="{fmt(p.height)}" text-anchor="{anchor}"{baseline} '
                f'fill="#000" stroke="none">{escape(p.content)}</text>')
    raise TypeError(f"cannot render {type(p).__name__}")


def to_svg(model: DrawingModel, margin_mm: float = layout.DEFAULT_MARGIN) -> bytes:
    """Serialize the drawing; equal models always give equal bytes."""
    box = _bounds(model)
    if box is None:
        vx, vy, vw, vh = 0.0, 0.0, 1.0, 1.0
    else:
        x0, y0, x1, y1 = box
        # flipped: svg top edge is the model's max y
        vx, vy = x0 - margin_mm, -y1 - margin_mm
        vw, vh = (x1 - x0) + 2 * margin_mm, (y1 - y0) + 2 * margin_mm
        vw, vh = max(vw, 1.0), max(vh, 1.0)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="{SVG_NS}" version="1.1" width="{fmt(vw)}mm" height="{fmt(vh)}mm" '
        f'viewBox="{fmt(vx)} {fmt(vy)} {fmt(vw)} {fmt(vh)}">',
    ]
    ordered = sorted(model.sets, key=lambda g: (g.source_id == layout.ROUTING_SET_ID, g.source_id))
    for gset in ordered:
        if not gset.primitives:
            out.append(f"<g id={quoteattr(gset.source_id)}/>")
            continue
        out.append(
            f'<g id={quoteattr(gset.source_id)} fill="none" stroke="#000" '
            f'stroke-width="{fmt(layout.THIN_STROKE)}" stroke-linecap="round" '
            f'font-family="{FONT_FAMILY}">')
        out.extend("  " + _shape(p) for p in gset.primitives)
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def shape_count(svg: bytes) -> int:
    """Number of drawable elements in an SVG produced by :func:`to_svg`."""
    root = ET.fromstring(svg)
    shapes = {f"{{{SVG_NS}}}{t}" for t in ("circle", "line", "rect", "text")}
    return sum(1 for el in root.iter() if el.tag in shapes)


__all__ = ["fmt", "shape_count", "to_svg"]
