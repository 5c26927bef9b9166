"""``schemeforge`` command line: check, render, spec, catalog, fmt.

Exit status is 0 on success, 1 when the input has errors (diagnostics go to
standard error as ``file:line:col: severity: message``) and 2 for usage or
I/O problems.  No command writes an output file when it fails.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
import tempfile
from pathlib import Path

from . import layout
from .catalog import CatalogError, apply_entry, filter_catalogs, load_catalogs
from .dsl import parse_scheme, serialize_scheme
from .model import Actuator, Diagnostic, Instrument, Scheme, validate
from .render import to_svg
from .routing import RoutingError
from .specgen import GroupBy, generate, render_spec_csv
from .symgen import regenerate
from .tagcodes import TagError, measured_variable, parse_code

CATALOG_ENV = "SCHEMEFORGE_CATALOG_DIR"

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class _IOFailure(Exception):
    pass


def _report(diags: list[Diagnostic], file: str) -> None:
    for d in diags:
        print(d.format(d.file or file), file=sys.stderr)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _IOFailure(f"{path}: cannot read: {exc}") from None


def _load(path: str) -> Scheme | None:
    scheme, diags = parse_scheme(_read_text(path))
    _report(diags, path)
    return scheme


def write_atomic(path: str | Path, data: bytes) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
    except OSError as exc:
        raise _IOFailure(f"{path}: cannot write: {exc}") from None
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise _IOFailure(f"{path}: cannot write: {exc}") from None


def cmd_check(args) -> int:
    return EXIT_OK if _load(args.scheme) is not None else EXIT_INVALID


def cmd_render(args) -> int:
    scheme = _load(args.scheme)
    if scheme is None:
        return EXIT_INVALID
    try:
        model = regenerate(scheme)
    except RoutingError as exc:
        print(f"{args.scheme}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if model.primitive_count() == 0:
        print(f"{args.scheme}: warning: drawing is empty", file=sys.stderr)
    out = args.out or str(Path(args.scheme).with_suffix(".svg"))
    write_atomic(out, to_svg(model, margin_mm=args.margin))
    return EXIT_OK


def cmd_spec(args) -> int:
    scheme = _load(args.scheme)
    if scheme is None:
        return EXIT_INVALID
    text = render_spec_csv(generate(scheme, GroupBy(args.group_by)))
    if args.out:
        write_atomic(args.out, text.encode("utf-8"))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _catalog_dir(args) -> str:
    directory = args.catalog_dir or os.environ.get(CATALOG_ENV)
    if not directory:
        raise _IOFailure(f"no catalog directory: pass --catalog-dir or set {CATALOG_ENV}")
    return directory


def _load_catalogs(args):
    try:
        catalogs, diags = load_catalogs(_catalog_dir(args))
    except OSError as exc:
        raise _IOFailure(str(exc)) from None
    _report(diags, "")
    return catalogs


def _table(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def cmd_catalog_find(args) -> int:
    try:
        variable = measured_variable(parse_code(args.code))
    except TagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    catalogs = _load_catalogs(args)
    rows = [("catalog", "entry", "code", "type_brand", "name")]
    for cat in filter_catalogs(catalogs, variable):
        if not cat.entries:
            rows.append((cat.catalog_id, "-", "", "", ""))
        for e in cat.entries:
            rows.append((cat.catalog_id, e.entry_id, e.suggested_code or "",
                         e.spec.type_brand, e.spec.name))
    print(_table(rows))
    return EXIT_OK


def cmd_catalog_apply(args) -> int:
    catalogs = _load_catalogs(args)
    scheme = _load(args.input)
    if scheme is None:
        return EXIT_INVALID
    try:
        _, entry = catalogs.find_entry(args.entry)
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    ids = [i for i in args.ids.split(",") if i]
    missing = [i for i in ids if not isinstance(scheme.get(i), (Instrument, Actuator))]
    if missing or not ids:
        print(f"error: no instrument or actuator with id {', '.join(missing) or '(none)'}",
              file=sys.stderr)
        return EXIT_INVALID
    updated = {}
    regen = []
    for element_id in ids:
        try:
            device, needed = apply_entry(updated.get(element_id, scheme.get(element_id)), entry)
        except CatalogError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        updated[element_id] = device
        if needed:
            regen.append(element_id)
    new = dataclasses.replace(
        scheme,
        instruments=[updated.get(i.id, i) for i in scheme.instruments],
        actuators=[updated.get(a.id, a) for a in scheme.actuators],
    )
    diags = validate(new)
    if diags:
        _report(diags, args.input)
        return EXIT_INVALID
    write_atomic(args.out, serialize_scheme(new).encode("utf-8"))
    if regen:
        print(f"regenerate needed: {', '.join(regen)}")
    return EXIT_OK


def cmd_fmt(args) -> int:
    source = _read_text(args.scheme)
    scheme, diags = parse_scheme(source)
    _report(diags, args.scheme)
    if scheme is None:
        return EXIT_INVALID
    text = serialize_scheme(scheme)
    if not args.write:
        sys.stdout.write(text)
    elif text != source:
        write_atomic(args.scheme, text.encode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schemeforge",
                                     description="Compile automation scheme files.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and validate a scheme")
    p.add_argument("scheme")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("render", help="draw a scheme as SVG")
    p.add_argument("scheme")
    p.add_argument("--out", help="output SVG path (default: scheme path with .svg)")
    p.add_argument("--margin", type=float, default=layout.DEFAULT_MARGIN, help="margin in mm")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("spec", help="write the specification table as CSV")
    p.add_argument("scheme")
    p.add_argument("--group-by", choices=[g.value for g in GroupBy], default=GroupBy.FLAT.value)
    p.add_argument("--out", help="output CSV path (default: standard output)")
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("catalog", help="query catalogs or apply an entry")
    csub = p.add_subparsers(dest="action", required=True)
    f = csub.add_parser("find", help="list catalogs measuring the variable of a code")
    f.add_argument("--catalog-dir")
    f.add_argument("--code", required=True)
    f.set_defaults(func=cmd_catalog_find)
    a = csub.add_parser("apply", help="apply a catalog entry to devices")
    a.add_argument("--catalog-dir")
    a.add_argument("--entry", required=True, help="entry id or catalog/entry")
    a.add_argument("--ids", required=True, help="comma-separated device ids")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_catalog_apply)

    p = sub.add_parser("fmt", help="print or rewrite the canonical form")
    p.add_argument("scheme")
    p.add_argument("--write", action="store_true")
    p.set_defaults(func=cmd_fmt)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
