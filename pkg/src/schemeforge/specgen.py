"""Specification tables of instruments and actuators, built from device parameters.

Three groupings are supported: one flat section, sections per location-table
band the device sits in, and sections per control loop taken from the
numeric part of the positional designation.  Devices with the same
designation, type and name collapse into one row with a quantity.
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

from .model import Device, Point, Scheme
from .tagcodes import display_designation

NO_NUMBER = "Без номера"
NO_SECTION = "Без раздела"
LOOP_TITLE = "Контур {}"
CSV_HEADER = ("section", "pos", "name", "type_brand", "unit", "qty", "mass",
              "manufacturer_code", "note")


class GroupBy(Enum):
    FLAT = "flat"
    BY_LOCATION = "location"
    BY_LOOP = "loop"


@dataclass(frozen=True)
class SpecRow:
    pos_display: str
    name: str
    type_brand: str
    unit: str
    quantity: int
    mass: str
    manufacturer_code: str
    note: str
    element_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class SpecSection:
    title: str
    rows: tuple[SpecRow, ...]


@dataclass(frozen=True)
class SpecTable:
    mode: GroupBy
    sections: tuple[SpecSection, ...]

    def total_quantity(self) -> int:
        return sum(r.quantity for s in self.sections for r in s.rows)

    def titles(self) -> list[str]:
        return [s.title for s in self.sections]


def _order_key(device: Device) -> tuple:
    if device.pos is None:
        return (1, 0, "", device.id)
    return (0, device.pos.loop, device.pos.suffix, device.id)


def build_rows(devices: list[Device]) -> tuple[SpecRow, ...]:
    """Merge devices into rows keyed by (designation, type_brand, name)."""
    groups: dict[tuple[str, str, str], list[Device]] = defaultdict(list)
    for device in sorted(devices, key=_order_key):
        pos = display_designation(device.pos) if device.pos is not None else ""
        groups[(pos, device.spec.type_brand, device.spec.name)].append(device)
    rows = []
    for (pos, type_brand, name), members in groups.items():
        lead = members[0].spec
        rows.append(SpecRow(pos, name, type_brand, lead.unit, len(members), lead.mass,
                            lead.manufacturer_code, lead.note,
                            tuple(m.id for m in members)))
    # dict keeps first-seen order, which already follows the device order key
    return tuple(rows)


def _in_band(p: Point, left: float, right: float, top: float, bottom: float) -> bool:
    # top and left edges belong to the band, bottom and right to the next one
    return left <= p.x < right and bottom < p.y <= top


def location_sections(scheme: Scheme) -> list[tuple[str, float, float, float, float]]:
    """Bands ``(title, left, right, top, bottom)`` of every location table in order."""
    bands = []
    for table in scheme.tables:
        top = table.origin.y
        for section in table.sections:
            bands.append((section.name, table.origin.x, table.origin.x + table.width,
                          top, top - section.height))
            top -= section.height
    return bands


def locate(device: Device, bands) -> str | None:
    for title, left, right, top, bottom in bands:
        if _in_band(device.attach, left, right, top, bottom):
            return title
    return None


def generate(scheme: Scheme, mode: GroupBy = GroupBy.FLAT) -> SpecTable:
    """Specification table of all instruments and actuators in ``scheme``.

    Location mode merges same-named bands of different tables into one
    section and drops bands with no devices; devices outside every band go
    to a final "Без раздела" section.  Loop mode orders "Контур N" sections
    by N and puts undesignated devices last under "Без номера".
    """
    devices = scheme.devices()
    if mode is GroupBy.FLAT:
        return SpecTable(mode, (SpecSection("", build_rows(devices)),))

    buckets: dict[str, list[Device]] = {}
    tail: list[Device] = []
    if mode is GroupBy.BY_LOCATION:
        bands = location_sections(scheme)
        for title, *_ in bands:
            buckets.setdefault(title, [])
        for device in devices:
            title = locate(device, bands)
            (tail if title is None else buckets[title]).append(device)
        tail_title = NO_SECTION
        ordered = list(buckets.items())
    else:
        loops: dict[int, list[Device]] = defaultdict(list)
        for device in devices:
            if device.pos is None:
                tail.append(device)
            else:
                loops[device.pos.loop].append(device)
        tail_title = NO_NUMBER
        ordered = [(LOOP_TITLE.format(n), loops[n]) for n in sorted(loops)]

    sections = [SpecSection(title, build_rows(members)) for title, members in ordered if members]
    if tail:
        sections.append(SpecSection(tail_title, build_rows(tail)))
    return SpecTable(mode, tuple(sections))


def render_spec_csv(table: SpecTable) -> str:
    """RFC 4180 CSV, one line per row with its section title repeated."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for section in table.sections:
        for r in section.rows:
            writer.writerow((section.title, r.pos_display, r.name, r.type_brand, r.unit,
                             r.quantity, r.mass, r.manufacturer_code, r.note))
    return buf.getvalue()
