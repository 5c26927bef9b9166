"""Carrier geometry: visible symbols regenerated from element parameters.

Nothing here is stored back into the scheme.  Changing a parameter and
calling :func:`regenerate` again is the only way geometry changes, so a
retagged instrument keeps its circle and chord and only its texts move.
"""

from __future__ import annotations

from . import layout
from .geometry import Circle, DrawingModel, GeometrySet, Rect, Segment, Text
from .model import Actuator, Instrument, LocationTable, NormalPosition, Panel, Point, Scheme
from .routing import route_all
from .tagcodes import display_code, display_designation


def _text_width(content: str, height: float = layout.TEXT_HEIGHT) -> float:
    return len(content) * height * layout.CHAR_WIDTH_FACTOR


def instrument_symbol(inst: Instrument) -> GeometrySet:
    c = inst.attach
    r = layout.INSTRUMENT_DIAMETER / 2
    h = layout.TEXT_HEIGHT
    prims = [Circle(c, layout.INSTRUMENT_DIAMETER)]
    if inst.on_panel:
        prims.append(Segment(c.offset(dx=-r), c.offset(dx=r)))
    code = display_code(inst.code)
    baseline = c.offset(dy=layout.CODE_BASELINE_DY)
    prims.append(Text(baseline, code, h))
    # indexes hang off the right end of the centred code text
    tail = baseline.offset(dx=_text_width(code) / 2)
    if inst.upper_index:
        prims.append(Text(tail.offset(dy=layout.INDEX_DY), inst.upper_index, h, align="start"))
    if inst.lower_index:
        prims.append(Text(tail.offset(dy=-layout.INDEX_DY), inst.lower_index, h, align="start"))
    if inst.pos is not None:
        prims.append(Text(c.offset(dy=layout.POS_BASELINE_DY), display_designation(inst.pos), h))
    return GeometrySet(inst.id, prims)


def actuator_symbol(act: Actuator) -> GeometrySet:
    a = act.attach
    center = a.offset(dy=layout.ACTUATOR_CENTER_DY)
    prims = [
        Segment(a, a.offset(dy=layout.ACTUATOR_STEM)),
        Circle(center, layout.ACTUATOR_DIAMETER),
    ]
    if act.manual_control:
        top = center.offset(dy=layout.ACTUATOR_DIAMETER / 2)
        grip = top.offset(dy=layout.HANDLE_STEM)
        half = layout.HANDLE_WIDTH / 2
        prims.append(Segment(top, grip))
        prims.append(Segment(grip.offset(dx=-half), grip.offset(dx=half)))
    marker = {
        NormalPosition.OPEN: layout.MARKER_OPEN,
        NormalPosition.CLOSED: layout.MARKER_CLOSED,
    }.get(act.normal_position)
    if marker:
        prims.append(Text(center.offset(dx=layout.MARKER_DX), marker, layout.TEXT_HEIGHT,
                          align="start", valign="central"))
    if act.pos is not None:
        prims.append(Text(a.offset(dy=layout.ACTUATOR_POS_DY), display_designation(act.pos),
                          layout.TEXT_HEIGHT))
    return GeometrySet(act.id, prims)


def table_geometry(tbl: LocationTable) -> GeometrySet:
    """Banded location table hanging down from its top-left origin.

    A table that continues on the next sheet is drawn open on the right.
    """
    o = tbl.origin
    total = tbl.height
    left, right = o.x, o.x + tbl.width
    bottom = o.y - total
    prims = []
    if tbl.ends_here:
        prims.append(Rect(o.offset(dy=-total), tbl.width, total))
    else:
        prims.append(Segment(o, o.offset(dx=tbl.width)))
        prims.append(Segment(o.offset(dy=-total), o.offset(dx=tbl.width, dy=-total)))
        prims.append(Segment(o.offset(dy=-total), o))
    name_x = left + layout.NAME_COLUMN_WIDTH
    prims.append(Segment(Point(name_x, o.y), Point(name_x, bottom)))
    top = o.y
    for i, section in enumerate(tbl.sections):
        if i:
            prims.append(Segment(Point(left, top), Point(right, top)))
        mid = top - section.height / 2
        prims.append(Text(Point(left + layout.NAME_COLUMN_WIDTH / 2, mid), section.name,
                          layout.TEXT_HEIGHT, valign="central"))
        top -= section.height
    return GeometrySet(tbl.id, prims)


def panel_geometry(p: Panel) -> GeometrySet:
    prims = [Rect(p.origin, p.width, p.height, thick=True)]
    if p.label:
        inset = layout.PANEL_LABEL_INSET
        prims.append(Text(p.origin.offset(dx=inset, dy=p.height - inset), p.label,
                          layout.TEXT_HEIGHT, align="start", valign="hanging"))
    return GeometrySet(p.id, prims)


def regenerate(scheme: Scheme) -> DrawingModel:
    """Build the full drawing from parameters; the routing set comes last."""
    sets = [panel_geometry(p) for p in scheme.panels]
    sets += [instrument_symbol(i) for i in scheme.instruments]
    sets += [actuator_symbol(a) for a in scheme.actuators]
    sets += [table_geometry(t) for t in scheme.tables]
    sets.sort(key=lambda s: s.source_id)
    sets.append(route_all(scheme))
    return DrawingModel(sets)
