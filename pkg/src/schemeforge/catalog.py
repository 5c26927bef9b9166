"""Electronic instrument catalogs.

A catalog is a ``*.catalog.json`` file::

    {"id": "thermo", "title": "Temperature sensors", "measures": ["T"],
     "entries": [{"id": "txa-0395", "code": "TE",
                  "spec": {"name": "...", "type_brand": "ТХА-0395"}}]}

Catalogs are offered for an instrument only when they measure the variable
named by the first letter of its code.  Picking an entry copies its
specifying fields onto the device and may replace the letter code, in which
case the symbol has to be regenerated.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

from .model import SPEC_FIELDS, Device, Diagnostic, Instrument, SpecProps, error
from .tagcodes import MeasuredVariable, TagError, display_code, parse_code

CATALOG_SUFFIX = ".catalog.json"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    entry_id: str
    spec: SpecProps
    suggested_code: str | None = None


@dataclass(frozen=True)
class Catalog:
    catalog_id: str
    title: str
    measures: frozenset[MeasuredVariable]
    entries: tuple[CatalogEntry, ...] = ()

    def entry(self, entry_id: str) -> CatalogEntry | None:
        return next((e for e in self.entries if e.entry_id == entry_id), None)


@dataclass(frozen=True)
class CatalogSet:
    catalogs: tuple[Catalog, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "catalogs",
                           tuple(sorted(self.catalogs, key=lambda c: c.catalog_id)))

    def __iter__(self):
        return iter(self.catalogs)

    def __len__(self) -> int:
        return len(self.catalogs)

    def find_entry(self, ref: str) -> tuple[Catalog, CatalogEntry]:
        """Look up ``catalog_id/entry_id`` or a bare entry id unique across catalogs."""
        if "/" in ref:
            cat_id, entry_id = ref.split("/", 1)
            cats = [c for c in self.catalogs if c.catalog_id == cat_id]
        else:
            entry_id, cats = ref, list(self.catalogs)
        hits = [(c, e) for c in cats for e in c.entries if e.entry_id == entry_id]
        if not hits:
            raise CatalogError(f"unknown catalog entry {ref!r}")
        if len(hits) > 1:
            owners = ", ".join(c.catalog_id for c, _ in hits)
            raise CatalogError(f"entry {ref!r} is ambiguous (in {owners}); use catalog/entry")
        return hits[0]


def parse_catalog(data: object) -> Catalog:
    """Build a catalog from decoded JSON, raising :class:`CatalogError` on bad structure."""
    if not isinstance(data, dict):
        raise CatalogError("catalog must be a JSON object")
    unknown = set(data) - {"id", "title", "measures", "entries"}
    if unknown:
        raise CatalogError(f"unknown catalog keys: {', '.join(sorted(unknown))}")
    cat_id = data.get("id")
    if not isinstance(cat_id, str) or not cat_id:
        raise CatalogError("catalog 'id' must be a non-empty string")
    title = data.get("title", "")
    if not isinstance(title, str):
        raise CatalogError("catalog 'title' must be a string")
    letters = data.get("measures")
    if not isinstance(letters, list) or not letters:
        raise CatalogError("catalog 'measures' must be a non-empty list of variable letters")
    if not all(isinstance(v, str) for v in letters):
        raise CatalogError("catalog 'measures' must contain letters")
    try:
        measures = frozenset(MeasuredVariable.from_letter(v) for v in letters)
    except TagError as exc:
        raise CatalogError(str(exc)) from None
    raw_entries = data.get("entries", [])
    if not isinstance(raw_entries, list):
        raise CatalogError("catalog 'entries' must be a list")
    entries = []
    seen: set[str] = set()
    for n, raw in enumerate(raw_entries):
        entry = _parse_entry(raw, n)
        if entry.entry_id in seen:
            raise CatalogError(f"duplicate entry id {entry.entry_id!r}")
        seen.add(entry.entry_id)
        entries.append(entry)
    return Catalog(cat_id, title, measures, tuple(entries))


def _parse_entry(raw: object, n: int) -> CatalogEntry:
    if not isinstance(raw, dict):
        raise CatalogError(f"entry #{n} must be an object")
    unknown = set(raw) - {"id", "spec", "code"}
    if unknown:
        raise CatalogError(f"entry #{n}: unknown keys {', '.join(sorted(unknown))}")
    entry_id = raw.get("id")
    if not isinstance(entry_id, str) or not entry_id:
        raise CatalogError(f"entry #{n}: 'id' must be a non-empty string")
    spec = raw.get("spec", {})
    if not isinstance(spec, dict):
        raise CatalogError(f"entry {entry_id!r}: 'spec' must be an object")
    for key, value in spec.items():
        if key not in SPEC_FIELDS:
            raise CatalogError(f"entry {entry_id!r}: unknown spec field {key!r}")
        if not isinstance(value, str):
            raise CatalogError(f"entry {entry_id!r}: spec field {key!r} must be a string")
    code = raw.get("code")
    if code is not None:
        if not isinstance(code, str):
            raise CatalogError(f"entry {entry_id!r}: 'code' must be a string")
        try:
            parse_code(code)
        except TagError as exc:
            raise CatalogError(f"entry {entry_id!r}: {exc}") from None
    return CatalogEntry(entry_id, SpecProps(**{k: v.rstrip() for k, v in spec.items()}), code)


def load_catalogs(directory: str | Path) -> tuple[CatalogSet, list[Diagnostic]]:
    """Read every ``*.catalog.json`` in ``directory``.

    Malformed files are skipped with an error diagnostic each.  An unreadable
    directory raises :class:`OSError`.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"catalog directory not found: {directory}")
    catalogs: dict[str, Catalog] = {}
    diags: list[Diagnostic] = []
    for path in sorted(directory.glob("*" + CATALOG_SUFFIX)):
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            catalog = parse_catalog(data)
        except json.JSONDecodeError as exc:
            diags.append(error(exc.msg, line=exc.lineno, column=exc.colno, file=str(path)))
            continue
        except (CatalogError, UnicodeDecodeError) as exc:
            diags.append(error(str(exc), file=str(path)))
            continue
        if catalog.catalog_id in catalogs:
            diags.append(error(f"duplicate catalog id {catalog.catalog_id!r}", file=str(path)))
            continue
        catalogs[catalog.catalog_id] = catalog
    return CatalogSet(tuple(catalogs.values())), diags


def filter_catalogs(catalogs: CatalogSet, variable: MeasuredVariable) -> list[Catalog]:
    return [c for c in catalogs if variable in c.measures]


def merge_spec(base: SpecProps, update: SpecProps) -> SpecProps:
    """Non-empty fields of ``update`` win; empty ones leave ``base`` alone."""
    changes = {name: getattr(update, name) for name in SPEC_FIELDS if getattr(update, name)}
    return dataclasses.replace(base, **changes)


def apply_entry(device: Device, entry: CatalogEntry) -> tuple[Device, bool]:
    """Return the device with the entry applied and whether its symbol needs regenerating.

    Actuators carry no letter code, so only their specifying fields change.
    """
    spec = merge_spec(device.spec, entry.spec)
    if isinstance(device, Instrument) and entry.suggested_code is not None:
        try:
            code = parse_code(entry.suggested_code)
        except TagError as exc:
            raise CatalogError(f"entry {entry.entry_id!r}: {exc}") from None
        if display_code(code) != display_code(device.code):
            return dataclasses.replace(device, spec=spec, code=code), True
    return dataclasses.replace(device, spec=spec), False


__all__ = [
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "CatalogSet",
    "apply_entry",
    "filter_catalogs",
    "load_catalogs",
    "merge_spec",
    "parse_catalog",
]
