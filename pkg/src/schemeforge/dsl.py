"""Text format for automation schemes (``.scm``).

A file starts with ``scheme v1`` and holds one block per element::

    scheme v1

    # field-mounted thermocouple
    instrument te1 {
      at 40 88;
      code TE;
      pos 1а;
      spec { name "Термопреобразователь"; type_brand "ТХА-0395"; }
    }

    line l1 { path @te1.s, 40 62, @tir1.n; }

Fields are ``name value...;`` (the last ``;`` before ``}`` may be omitted),
texts are double-quoted with ``\\"`` and ``\\\\`` escapes (a single bare word
is accepted too), comments run from ``#`` to the end of the line.  Line
waypoints are ``x y`` pairs or ``@element.anchor`` references separated by
commas.  When a line has no ``style``, it inherits the ``line_kind`` of the
first instrument it references, otherwise ``normal``.

:func:`serialize_scheme` writes the canonical form: elements grouped by kind
and sorted by id, fields in fixed order, numbers with at most three decimals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .model import (
    ID_PATTERN,
    SPEC_FIELDS,
    Actuator,
    AnchorRef,
    ConnectionLine,
    Diagnostic,
    Instrument,
    LineStyle,
    LocationTable,
    NormalPosition,
    Panel,
    Point,
    Scheme,
    SpecProps,
    TableSection,
    error,
    format_mm,
    validate,
    warning,
)
from .tagcodes import TagError, display_code, display_designation, parse_code, parse_designation

HEADER = "scheme v1"
FORMAT_VERSION = "v1"
KINDS = ("panel", "instrument", "actuator", "table", "line")
LONG_CODE = 4

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\[^\n])*")
  | (?P<badstring>"[^\n]*)
  | (?P<punct>[{};,])
  | (?P<word>[^\s{};,"\#]+)
    """,
    re.VERBOSE,
)
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_REF = re.compile(r"@([^\W\d][\w\-]*)\.(\w+)")
_ESCAPE = re.compile(r"\\(.)")


@dataclass(frozen=True)
class Token:
    kind: str  # word | string | punct | eof
    value: str
    line: int
    column: int


class _Fail(Exception):
    def __init__(self, message: str, tok: Token):
        super().__init__(message)
        self.tok = tok


def _unescape(body: str, tok: Token) -> str:
    def sub(m: re.Match) -> str:
        if m.group(1) not in '"\\':
            raise _Fail(f"unknown escape sequence \\{m.group(1)} in string", tok)
        return m.group(1)

    return _ESCAPE.sub(sub, body)


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    line, line_start, pos = 1, 0, 0
    if source.startswith("\ufeff"):
        pos = line_start = 1
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        col = pos - line_start + 1
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "string":
            tok = Token("string", text, line, col)
            try:
                tokens.append(Token("string", _unescape(text[1:-1], tok), line, col))
            except _Fail as exc:
                diags.append(error(str(exc), line=line, column=col))
        elif kind == "badstring":
            diags.append(error("unterminated string", line=line, column=col))
        elif kind in ("punct", "word"):
            tokens.append(Token(kind, text, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens, diags


@dataclass
class _Field:
    name: Token
    values: list[Token]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.diags: list[Diagnostic] = []
        self.positions: dict[str, Token] = {}
        self.elements: dict[str, list] = {k: [] for k in KINDS}
        self.pending_lines: list[tuple[ConnectionLine, bool]] = []
        self.depth = 0

    # -- token helpers
    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        if tok.kind == "punct" and tok.value == "{":
            self.depth += 1
        elif tok.kind == "punct" and tok.value == "}":
            self.depth = max(self.depth - 1, 0)
        return tok

    def expect(self, value: str) -> Token:
        tok = self.next()
        if tok.kind != "punct" or tok.value != value:
            raise _Fail(f"expected {value!r}, found {_describe(tok)}", tok)
        return tok

    def recover(self) -> None:
        while self.depth > 0 and self.peek().kind != "eof":
            self.next()

    # -- grammar
    def parse(self) -> None:
        first = self.peek()
        if first.kind == "word" and first.value == "scheme":
            self.next()
            version = self.next()
            if version.kind != "word" or version.value != FORMAT_VERSION:
                self.diags.append(error(
                    f"unsupported scheme format {version.value!r}, expected {FORMAT_VERSION!r}",
                    line=version.line, column=version.column))
            if self.peek().kind == "punct" and self.peek().value == ";":
                self.next()
        else:
            self.diags.append(warning(f"missing {HEADER!r} header", line=1, column=1))

        while self.peek().kind != "eof":
            tok = self.next()
            if tok.kind != "word" or tok.value not in KINDS:
                self.diags.append(error(
                    f"expected an element ({', '.join(KINDS)}), found {_describe(tok)}",
                    line=tok.line, column=tok.column))
                self.recover()
                continue
            try:
                ident = self.next()
                if ident.kind != "word" or not ID_PATTERN.fullmatch(ident.value):
                    raise _Fail(f"invalid element id {ident.value!r}", ident)
                self.expect("{")
                fields, spec = self.parse_fields(tok.value == "table")
                self.positions[ident.value] = tok
                self.build(tok.value, ident, fields, spec)
            except _Fail as exc:
                self.diags.append(error(str(exc), line=exc.tok.line, column=exc.tok.column))
                self.recover()

    def parse_fields(self, repeat_sections: bool, allow_spec: bool = True):
        fields: dict[str, list[_Field]] = {}
        spec: dict[str, _Field] | None = None
        while True:
            tok = self.next()
            if tok.kind == "punct" and tok.value == "}":
                return fields, spec
            if tok.kind == "punct" and tok.value == ";":
                continue
            if tok.kind != "word":
                raise _Fail(f"expected a field name, found {_describe(tok)}", tok)
            if allow_spec and tok.value == "spec" and self.peek().kind == "punct" and self.peek().value == "{":
                if spec is not None:
                    raise _Fail("duplicate spec block", tok)
                self.next()
                spec = {}
                for name, items in self.parse_fields(False, allow_spec=False)[0].items():
                    if name not in SPEC_FIELDS:
                        raise _Fail(f"unknown spec field {name!r}", items[0].name)
                    spec[name] = items[0]
                continue
            values = []
            while not (self.peek().kind == "punct" and self.peek().value in ";}{"):
                if self.peek().kind == "eof":
                    raise _Fail("unexpected end of file inside a block", self.peek())
                values.append(self.next())
            if self.peek().value == "{":
                raise _Fail("unexpected '{'", self.peek())
            items = fields.setdefault(tok.value, [])
            if items and not (repeat_sections and tok.value == "section"):
                raise _Fail(f"duplicate field {tok.value!r}", tok)
            items.append(_Field(tok, values))

    def build(self, kind: str, ident: Token, fields: dict[str, list[_Field]], spec) -> None:
        allowed = _ALLOWED[kind]
        for name, items in fields.items():
            if name not in allowed:
                raise _Fail(f"unknown field {name!r} for {kind}", items[0].name)
        for name in _REQUIRED[kind]:
            if name not in fields:
                raise _Fail(f"{kind} {ident.value!r} is missing required field {name!r}", ident)
        if spec is not None and kind not in ("instrument", "actuator"):
            raise _Fail(f"{kind} elements have no spec block", ident)

        def one(name):
            return fields[name][0] if name in fields else None

        eid = ident.value
        if kind == "panel":
            w, h = _numbers(one("size"), 2)
            elem = Panel(eid, _point(one("at")), w, h, _text(one("label")))
        elif kind == "instrument":
            code_field = one("code")
            code_tok = _single(code_field)
            try:
                code = parse_code(code_tok.value)
            except TagError as exc:
                raise _Fail(str(exc), code_tok) from None
            if len(code_tok.value) > LONG_CODE:
                self.diags.append(warning(
                    f"code {code_tok.value!r} of {eid!r} may overflow the symbol circle",
                    eid, line=code_tok.line, column=code_tok.column))
            elem = Instrument(
                eid, _point(one("at")), code,
                on_panel=_flag(one("panel")),
                upper_index=_text(one("upper_index")),
                lower_index=_text(one("lower_index")),
                pos=_designation(one("pos")),
                spec=_spec(spec),
                comment=_text(one("comment")),
                line_kind=_enum(one("line_kind"), LineStyle, LineStyle.NORMAL),
            )
        elif kind == "actuator":
            elem = Actuator(
                eid, _point(one("at")),
                manual_control=_flag(one("manual_control")),
                normal_position=_enum(one("normal_position"), NormalPosition,
                                      NormalPosition.UNSPECIFIED),
                pos=_designation(one("pos")),
                spec=_spec(spec),
                comment=_text(one("comment")),
            )
        elif kind == "table":
            sections = []
            for f in fields.get("section", []):
                if len(f.values) != 2:
                    raise _Fail("section needs a name and a height", f.name)
                name = _text(_Field(f.name, f.values[:1]))
                (height,) = _numbers(_Field(f.name, f.values[1:]), 1)
                sections.append(TableSection(name, height))
            (width,) = _numbers(one("width"), 1)
            ends = one("ends_here")
            elem = LocationTable(eid, _point(one("at")), width, sections,
                                 ends_here=True if ends is None else _flag(ends),
                                 comment=_text(one("comment")))
        else:
            style = one("style")
            elem = ConnectionLine(eid, _path(one("path")),
                                  _enum(style, LineStyle, LineStyle.NORMAL))
            self.pending_lines.append((elem, style is None))
            return
        self.elements[kind].append(elem)

    def finish_lines(self) -> None:
        kinds = {i.id: i.line_kind for i in self.elements["instrument"]}
        for line, inherit in self.pending_lines:
            if inherit:
                refs = [w.element_id for w in line.waypoints if isinstance(w, AnchorRef)]
                style = next((kinds[r] for r in refs if r in kinds), LineStyle.NORMAL)
                line = ConnectionLine(line.id, line.waypoints, style)
            self.elements["line"].append(line)


_ALLOWED = {
    "panel": {"at", "size", "label"},
    "instrument": {"at", "code", "pos", "panel", "upper_index", "lower_index", "line_kind",
                   "comment"},
    "actuator": {"at", "pos", "manual_control", "normal_position", "comment"},
    "table": {"at", "width", "section", "ends_here", "comment"},
    "line": {"path", "style"},
}
_REQUIRED = {
    "panel": ("at", "size"),
    "instrument": ("at", "code"),
    "actuator": ("at",),
    "table": ("at", "width", "section"),
    "line": ("path",),
}


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of file"
    if tok.kind == "string":
        return "a string"
    return repr(tok.value)


def _single(field: _Field) -> Token:
    if len(field.values) != 1:
        raise _Fail(f"field {field.name.value!r} takes exactly one value", field.name)
    return field.values[0]


def _numbers(field: _Field, count: int) -> list[float]:
    if len(field.values) != count:
        raise _Fail(f"field {field.name.value!r} takes {count} number(s)", field.name)
    out = []
    for tok in field.values:
        if tok.kind != "word" or not _NUMBER.fullmatch(tok.value):
            raise _Fail(f"expected a number, found {_describe(tok)}", tok)
        out.append(float(tok.value))
    return out


def _point(field: _Field) -> Point:
    return Point(*_numbers(field, 2))


def _text(field: _Field | None) -> str:
    if field is None:
        return ""
    tok = _single(field)
    if tok.kind == "punct":
        raise _Fail(f"expected text, found {_describe(tok)}", tok)
    return tok.value.rstrip()


def _flag(field: _Field | None) -> bool:
    if field is None:
        return False
    if not field.values:
        return True
    tok = _single(field)
    value = tok.value.lower()
    if value in ("yes", "true"):
        return True
    if value in ("no", "false"):
        return False
    raise _Fail(f"expected yes or no, found {_describe(tok)}", tok)


def _enum(field: _Field | None, enum, default):
    if field is None:
        return default
    tok = _single(field)
    try:
        return enum(tok.value)
    except ValueError:
        options = ", ".join(m.value for m in enum)
        raise _Fail(f"expected one of {options}, found {_describe(tok)}", tok) from None


def _designation(field: _Field | None):
    if field is None:
        return None
    tok = _single(field)
    try:
        return parse_designation(tok.value)
    except TagError as exc:
        raise _Fail(str(exc), tok) from None


def _spec(block: dict[str, _Field] | None) -> SpecProps:
    if not block:
        return SpecProps()
    return SpecProps(**{name: _text(f) for name, f in block.items()})


def _path(field: _Field) -> list:
    groups: list[list[Token]] = [[]]
    for tok in field.values:
        if tok.kind == "punct" and tok.value == ",":
            groups.append([])
        else:
            groups[-1].append(tok)
    points = []
    for group in groups:
        if len(group) == 1 and group[0].value.startswith("@"):
            m = _REF.fullmatch(group[0].value)
            if group[0].kind != "word" or m is None:
                raise _Fail(f"malformed anchor reference {group[0].value!r}", group[0])
            points.append(AnchorRef(m.group(1), m.group(2)))
        elif len(group) == 2:
            points.append(_point(_Field(field.name, group)))
        else:
            at = group[0] if group else field.name
            raise _Fail("path waypoints are 'x y' pairs or @element.anchor references", at)
    if len(points) < 2:
        raise _Fail("path needs at least 2 waypoints", field.name)
    return points


def parse_scheme(source: str) -> tuple[Scheme | None, list[Diagnostic]]:
    """Parse scheme text.

    Returns ``(scheme, diagnostics)``.  The scheme is ``None`` whenever any
    diagnostic is an error; warnings may accompany a successful parse.
    Every diagnostic carries a line and column.
    """
    tokens, diags = tokenize(source)
    parser = _Parser(tokens)
    parser.parse()
    parser.finish_lines()
    diags = diags + parser.diags
    if any(d.is_error for d in diags):
        return None, _ordered(diags)
    els = parser.elements
    scheme = Scheme(els["panel"], els["instrument"], els["actuator"], els["table"], els["line"])
    for d in validate(scheme):
        tok = parser.positions.get(d.element_id or "", tokens[0])
        diags.append(Diagnostic(d.severity, d.message, tok.line, tok.column, d.element_id))
    if any(d.is_error for d in diags):
        return None, _ordered(diags)
    return scheme, _ordered(diags)


def _ordered(diags: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=lambda d: (d.line or 0, d.column or 0))


def load_scheme(path: str | Path) -> tuple[Scheme | None, list[Diagnostic]]:
    path = Path(path)
    scheme, diags = parse_scheme(path.read_text(encoding="utf-8"))
    return scheme, [Diagnostic(d.severity, d.message, d.line, d.column, d.element_id, str(path))
                    for d in diags]


# -- canonical output


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _pt(p: Point) -> str:
    return f"{format_mm(p.x)} {format_mm(p.y)}"


def _block(kind: str, eid: str, lines: list[str]) -> str:
    body = "".join(f"  {line}\n" for line in lines)
    return f"{kind} {eid} {{\n{body}}}\n"


def _spec_lines(spec: SpecProps) -> list[str]:
    if spec.is_empty():
        return []
    inner = [f"  {name} {quote(getattr(spec, name))};" for name in SPEC_FIELDS
             if getattr(spec, name)]
    return ["spec {", *inner, "}"]


def serialize_scheme(scheme: Scheme) -> str:
    """Canonical text of a valid scheme; ``parse_scheme`` reads it back unchanged."""
    blocks = []
    for p in scheme.panels:
        body = [f"at {_pt(p.origin)};", f"size {format_mm(p.width)} {format_mm(p.height)};"]
        if p.label:
            body.append(f"label {quote(p.label)};")
        blocks.append(_block("panel", p.id, body))
    for i in scheme.instruments:
        body = [f"at {_pt(i.attach)};", f"code {display_code(i.code)};"]
        if i.pos is not None:
            body.append(f"pos {display_designation(i.pos)};")
        if i.on_panel:
            body.append("panel;")
        if i.upper_index:
            body.append(f"upper_index {quote(i.upper_index)};")
        if i.lower_index:
            body.append(f"lower_index {quote(i.lower_index)};")
        if i.line_kind is not LineStyle.NORMAL:
            body.append(f"line_kind {i.line_kind.value};")
        if i.comment:
            body.append(f"comment {quote(i.comment)};")
        body += _spec_lines(i.spec)
        blocks.append(_block("instrument", i.id, body))
    for a in scheme.actuators:
        body = [f"at {_pt(a.attach)};"]
        if a.pos is not None:
            body.append(f"pos {display_designation(a.pos)};")
        if a.manual_control:
            body.append("manual_control;")
        if a.normal_position is not NormalPosition.UNSPECIFIED:
            body.append(f"normal_position {a.normal_position.value};")
        if a.comment:
            body.append(f"comment {quote(a.comment)};")
        body += _spec_lines(a.spec)
        blocks.append(_block("actuator", a.id, body))
    for t in scheme.tables:
        body = [f"at {_pt(t.origin)};", f"width {format_mm(t.width)};"]
        body += [f"section {quote(s.name)} {format_mm(s.height)};" for s in t.sections]
        if not t.ends_here:
            body.append("ends_here no;")
        if t.comment:
            body.append(f"comment {quote(t.comment)};")
        blocks.append(_block("table", t.id, body))
    for ln in scheme.lines:
        path = ", ".join(str(w) if isinstance(w, AnchorRef) else _pt(w) for w in ln.waypoints)
        blocks.append(_block("line", ln.id, [f"style {ln.style.value};", f"path {path};"]))
    return "\n".join([HEADER + "\n", *blocks]).rstrip("\n") + "\n"
