"""Parameter-side model of a developed automation scheme.

Every drawing element is described here by its parameters only; the visible
geometry is derived from them by :mod:`schemeforge.symgen`.  All types are
frozen.  :class:`Scheme` keeps each collection sorted by element id, which is
also the document order used by downstream stages.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields
from enum import Enum

from .tagcodes import FunctionalCode, PositionalDesignation, display_designation

ID_PATTERN = re.compile(r"[^\W\d][\w\-]*")
MAX_INDEX_LENGTH = 8
_CONTROL = re.compile(r"[\x00-\x1f\x7f-\x9f\u2028\u2029]")


def format_mm(x: float) -> str:
    """Format a length with at most three decimals and no trailing zeros."""
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    message: str
    line: int | None = None
    column: int | None = None
    element_id: str | None = None
    file: str | None = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self, file: str | None = None) -> str:
        where = file or self.file or "<scheme>"
        if self.line is not None:
            where += f":{self.line}:{self.column or 1}"
        return f"{where}: {self.severity.value}: {self.message}"


def error(message: str, element_id: str | None = None, **kw) -> Diagnostic:
    return Diagnostic(Severity.ERROR, message, element_id=element_id, **kw)


def warning(message: str, element_id: str | None = None, **kw) -> Diagnostic:
    return Diagnostic(Severity.WARNING, message, element_id=element_id, **kw)


class LineStyle(Enum):
    NORMAL = "normal"
    DASHED = "dashed"


class NormalPosition(Enum):
    OPEN = "open"
    CLOSED = "closed"
    UNSPECIFIED = "unspecified"


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def offset(self, dx: float = 0.0, dy: float = 0.0) -> Point:
        return Point(self.x + dx, self.y + dy)

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)


@dataclass(frozen=True)
class AnchorRef:
    """Symbolic waypoint ``@element.anchor`` resolved during routing."""

    element_id: str
    anchor: str

    def __str__(self) -> str:
        return f"@{self.element_id}.{self.anchor}"


Waypoint = Point | AnchorRef


@dataclass(frozen=True)
class SpecProps:
    """The eleven specifying fields filled from catalogs."""

    designation: str = ""
    name: str = ""
    mass: str = ""
    note: str = ""
    type_brand: str = ""
    unit: str = ""
    unit_code: str = ""
    manufacturer_code: str = ""
    equipment_code: str = ""
    price: str = ""
    name_and_tech: str = ""

    def is_empty(self) -> bool:
        return not any(getattr(self, f.name) for f in fields(self))


SPEC_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(SpecProps))


@dataclass(frozen=True)
class Instrument:
    id: str
    attach: Point
    code: FunctionalCode
    on_panel: bool = False
    upper_index: str = ""
    lower_index: str = ""
    pos: PositionalDesignation | None = None
    spec: SpecProps = SpecProps()
    comment: str = ""
    line_kind: LineStyle = LineStyle.NORMAL


@dataclass(frozen=True)
class Actuator:
    id: str
    attach: Point
    manual_control: bool = False
    normal_position: NormalPosition = NormalPosition.UNSPECIFIED
    pos: PositionalDesignation | None = None
    spec: SpecProps = SpecProps()
    comment: str = ""


@dataclass(frozen=True)
class TableSection:
    name: str
    height: float


@dataclass(frozen=True)
class LocationTable:
    """Location table; ``origin`` is the top-left corner, sections stack downwards."""

    id: str
    origin: Point
    width: float
    sections: tuple[TableSection, ...]
    ends_here: bool = True
    comment: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "sections", tuple(self.sections))

    @property
    def height(self) -> float:
        return sum(s.height for s in self.sections)


@dataclass(frozen=True)
class Panel:
    """Panel, desk or cabinet rectangle; ``origin`` is the bottom-left corner."""

    id: str
    origin: Point
    width: float
    height: float
    label: str = ""


@dataclass(frozen=True)
class ConnectionLine:
    id: str
    waypoints: tuple[Waypoint, ...]
    style: LineStyle = LineStyle.NORMAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "waypoints", tuple(self.waypoints))


Device = Instrument | Actuator
Element = Panel | Instrument | Actuator | LocationTable | ConnectionLine


def _by_id(items) -> tuple:
    return tuple(sorted(items, key=lambda e: e.id))


@dataclass(frozen=True)
class Scheme:
    panels: tuple[Panel, ...] = ()
    instruments: tuple[Instrument, ...] = ()
    actuators: tuple[Actuator, ...] = ()
    tables: tuple[LocationTable, ...] = ()
    lines: tuple[ConnectionLine, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for f in ("panels", "instruments", "actuators", "tables", "lines"):
            object.__setattr__(self, f, _by_id(getattr(self, f)))
        index: dict[str, Element] = {}
        for element in self.elements():
            index.setdefault(element.id, element)
        object.__setattr__(self, "_index", index)

    def elements(self):
        yield from self.panels
        yield from self.instruments
        yield from self.actuators
        yield from self.tables
        yield from self.lines

    def devices(self) -> list[Device]:
        return [*self.instruments, *self.actuators]

    def get(self, element_id: str) -> Element | None:
        return self._index.get(element_id)

    def __len__(self) -> int:
        return sum(1 for _ in self.elements())


def _check_text(diags: list[Diagnostic], element_id: str, label: str, text: str) -> None:
    if _CONTROL.search(text):
        diags.append(error(f"{element_id}: {label} contains control characters", element_id))


def _check_point(diags: list[Diagnostic], element_id: str, label: str, p: Point) -> None:
    if not p.is_finite():
        diags.append(error(f"{element_id}: {label} coordinates must be finite", element_id))


def _check_positive(diags: list[Diagnostic], element_id: str, label: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        diags.append(error(f"{element_id}: {label} must be positive, got {value:g}", element_id))


def validate(scheme: Scheme) -> list[Diagnostic]:
    """Check every element invariant; an empty list means the scheme is valid."""
    from .routing import AnchorIndex, RoutingError, resolve_line

    diags: list[Diagnostic] = []
    seen: dict[str, int] = {}
    for element in scheme.elements():
        seen[element.id] = seen.get(element.id, 0) + 1
    for element_id in sorted(seen):
        if seen[element_id] > 1:
            diags.append(error(f"duplicate element id {element_id!r}", element_id))
        if not ID_PATTERN.fullmatch(element_id):
            diags.append(error(f"invalid element id {element_id!r}", element_id))

    for panel in scheme.panels:
        _check_point(diags, panel.id, "origin", panel.origin)
        _check_positive(diags, panel.id, "width", panel.width)
        _check_positive(diags, panel.id, "height", panel.height)
        _check_text(diags, panel.id, "label", panel.label)

    for device in scheme.devices():
        _check_point(diags, device.id, "attach point", device.attach)
        _check_text(diags, device.id, "comment", device.comment)
        for name in SPEC_FIELDS:
            _check_text(diags, device.id, f"spec {name}", getattr(device.spec, name))
    for inst in scheme.instruments:
        for label in ("upper_index", "lower_index"):
            text = getattr(inst, label)
            _check_text(diags, inst.id, label, text)
            if len(text) > MAX_INDEX_LENGTH:
                diags.append(error(
                    f"{inst.id}: {label} longer than {MAX_INDEX_LENGTH} characters", inst.id))

    for table in scheme.tables:
        _check_point(diags, table.id, "origin", table.origin)
        _check_positive(diags, table.id, "width", table.width)
        _check_text(diags, table.id, "comment", table.comment)
        if not table.sections:
            diags.append(error(f"{table.id}: location table needs at least one section", table.id))
        for i, section in enumerate(table.sections, 1):
            _check_positive(diags, table.id, f"section {i} height", section.height)
            if not section.name:
                diags.append(error(f"{table.id}: section {i} has an empty name", table.id))
            _check_text(diags, table.id, f"section {i} name", section.name)

    for line in scheme.lines:
        if len(line.waypoints) < 2:
            diags.append(error(f"{line.id}: connection line needs at least 2 waypoints", line.id))
        for p in line.waypoints:
            if isinstance(p, Point):
                _check_point(diags, line.id, "waypoint", p)
        for a, b in zip(line.waypoints, line.waypoints[1:]):
            if a == b:
                diags.append(error(f"{line.id}: consecutive waypoints {a} are identical", line.id))
                break

    by_pos: dict[str, set[str]] = {}
    for device in scheme.devices():
        if device.pos is not None:
            by_pos.setdefault(display_designation(device.pos), set()).add(device.spec.type_brand)
    for pos_text in sorted(by_pos):
        if len(by_pos[pos_text]) > 1:
            owners = sorted(d.id for d in scheme.devices()
                            if d.pos is not None and display_designation(d.pos) == pos_text)
            diags.append(error(
                f"positional designation {pos_text!r} is shared by elements with different "
                f"type_brand ({', '.join(owners)})", owners[0]))

    if not any(d.is_error for d in diags):
        index = AnchorIndex(scheme)
        for line in scheme.lines:
            try:
                resolve_line(line, index)
            except RoutingError as exc:
                diags.append(error(str(exc), line.id))
    return diags
