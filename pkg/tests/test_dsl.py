import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randomgen import random_scheme
from schemeforge.dsl import parse_scheme, serialize_scheme, tokenize
from schemeforge.model import AnchorRef, LineStyle, NormalPosition, Point, Scheme, Severity
from schemeforge.tagcodes import PositionalDesignation, parse_code


def parse_ok(source):
    scheme, diags = parse_scheme(source)
    assert scheme is not None, [d.format() for d in diags]
    return scheme, diags


def errors(source):
    scheme, diags = parse_scheme(source)
    assert scheme is None
    errs = [d for d in diags if d.is_error]
    assert errs
    for d in diags:
        assert d.line >= 1 and d.column >= 1
    return errs


def test_single_statement_instrument():
    scheme, diags = parse_ok("instrument a { at 100 200; code TIR; pos 12б; panel }")
    assert len(scheme.instruments) == 1
    inst = scheme.instruments[0]
    assert inst.on_panel is True
    assert inst.attach == Point(100, 200)
    assert inst.code == parse_code("TIR")
    assert inst.pos == PositionalDesignation(12, "б")
    # header is optional but its absence is flagged
    assert [d.severity for d in diags] == [Severity.WARNING]


def test_bad_code_reported_at_its_line():
    src = "scheme v1\n\ninstrument a {\n  at 0 0;\n  code X9;\n}\n"
    errs = errors(src)
    assert len(errs) == 1
    assert (errs[0].line, errs[0].column) == (5, 8)


def test_empty_scheme_serializes_to_header():
    assert serialize_scheme(Scheme()) == "scheme v1\n"
    scheme, diags = parse_ok("scheme v1\n")
    assert scheme == Scheme() and diags == []


def test_all_fields():
    src = """scheme v1
    panel p { at 0 0; size 50 30; label "Щит 1" }
    instrument i {
      at 1.5 -2; code PDI; pos 3; upper_index "x"; lower_index y; line_kind dashed;
      comment "он сказал \\"да\\" \\\\ ok";
      spec { designation D; name "Дифманометр, 0-25 кПа"; mass 1; note n; type_brand T;
             unit "шт."; unit_code 796; manufacturer_code M; equipment_code E; price 10;
             name_and_tech "NT" }
    }
    actuator v { at 5 5; manual_control; normal_position open; pos 3в; comment c }
    table t { at 0 100; width 120.25; section "по месту" 20; section "на щите" 15; ends_here no }
    line l { path @i.n, 10 10, @v.s }
    """
    scheme, diags = parse_ok(src)
    assert diags == []
    i = scheme.instruments[0]
    assert i.comment == 'он сказал "да" \\ ok'
    assert i.line_kind is LineStyle.DASHED
    assert i.spec.name == "Дифманометр, 0-25 кПа" and i.spec.unit_code == "796"
    v = scheme.actuators[0]
    assert v.manual_control and v.normal_position is NormalPosition.OPEN
    t = scheme.tables[0]
    assert t.width == 120.25 and not t.ends_here
    assert [(s.name, s.height) for s in t.sections] == [("по месту", 20), ("на щите", 15)]
    ln = scheme.lines[0]
    assert ln.waypoints == (AnchorRef("i", "n"), Point(10, 10), AnchorRef("v", "s"))
    # no explicit style: inherited from the dashed instrument it references
    assert ln.style is LineStyle.DASHED


def test_line_style_default_without_instrument():
    scheme, _ = parse_ok("line l { path 0 0, 10 0 }")
    assert scheme.lines[0].style is LineStyle.NORMAL


def test_comments_and_trailing_whitespace():
    scheme, _ = parse_ok('scheme v1 # header\npanel p { at 0 0; size 1 1; label "x  " } # tail\n')
    assert scheme.panels[0].label == "x"


@pytest.mark.parametrize(
    "src, fragment",
    [
        ("scheme v2\n", "unsupported"),
        ("instrument a { at 0 0 }", "missing required field 'code'"),
        ("instrument a { at 0; code T }", "takes 2 number"),
        ("instrument a { at 0 x; code T }", "expected a number"),
        ("instrument a { at 0 0; code T; colour red }", "unknown field"),
        ("instrument a { at 0 0; code T; code P }", "duplicate field"),
        ("instrument a { at 0 0; code T; pos a1 }", "decimal digits"),
        ('instrument a { at 0 0; code T; comment "open }', "unterminated"),
        ("instrument a { at 0 0; code T; spec { colour x } }", "unknown spec field"),
        ("panel p { at 0 0; size 1 1; spec { name x } }", "no spec block"),
        ("gizmo g { }", "expected an element"),
        ("line l { path 0 0 }", "at least 2"),
        ("line l { path 0 0, @a }", "malformed anchor"),
        ("line l { path 0 0, 1 }", "waypoints"),
        ("line l { path @ghost.n, 5 5 }", "ghost"),
        ("instrument a { at 0 0; code T; panel maybe }", "yes or no"),
        ("actuator v { at 0 0; normal_position ajar }", "expected one of"),
        ("instrument a { at 0 0; code T }\ninstrument a { at 9 9; code T }", "duplicate element id"),
        ("table t { at 0 0; width 10; section x 0 }", "must be positive"),
        ('instrument a { at 0 0; code T; comment "bad \\q" }', "escape"),
        ("instrument 1a { at 0 0; code T }", "invalid element id"),
        ("instrument a { at 0 0; code T", "end of file"),
    ],
)
def test_errors(src, fragment):
    errs = errors(src)
    assert any(fragment in e.message for e in errs), [e.message for e in errs]


def test_duplicate_id_points_at_second_definition():
    errs = errors("instrument a { at 0 0; code T }\ninstrument a { at 9 9; code T }")
    assert errs[0].line == 2


def test_recovery_reports_several_errors():
    src = "instrument a { at 0 0; code X }\ninstrument b { at 0 0; code T; spec { bad 1 } }\n" \
          "instrument c { at 0 0; code Z }\n"
    errs = errors(src)
    assert [e.line for e in errs] == [1, 2, 3]


def test_long_code_warning():
    scheme, diags = parse_ok("scheme v1\ninstrument a { at 0 0; code PDIRCA }")
    assert [d.severity for d in diags] == [Severity.WARNING]
    assert "overflow" in diags[0].message


def test_tokenize_positions():
    toks, diags = tokenize('a {\n  "b c"; # x\n}')
    assert diags == []
    assert [(t.value, t.line, t.column) for t in toks] == [
        ("a", 1, 1), ("{", 1, 3), ("b c", 2, 3), (";", 2, 8), ("}", 3, 1), ("", 3, 2)]


def test_canonical_order_restored():
    src = "scheme v1\nline z { path 0 0, 5 0 }\ninstrument b { code TI; at 0 0 }\n" \
          "instrument a { at 20 0; code TI }\npanel p { at 0 0; size 1 1 }\n"
    scheme, _ = parse_ok(src)
    text = serialize_scheme(scheme)
    heads = [ln for ln in text.splitlines() if ln.endswith("{") and not ln.startswith(" ")]
    assert heads == ["panel p {", "instrument a {", "instrument b {", "line z {"]


def test_serialize_is_deterministic():
    s = random_scheme(random.Random(3))
    assert serialize_scheme(s) == serialize_scheme(s)


@pytest.mark.parametrize("seed", range(40))
def test_round_trip_random(seed):
    s = random_scheme(random.Random(seed), max_elements=50)
    text = serialize_scheme(s)
    back, diags = parse_scheme(text)
    assert not any(d.is_error for d in diags)
    assert back == s
    assert serialize_scheme(back) == text


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip_property(seed):
    s = random_scheme(random.Random(seed), max_elements=20)
    assert parse_scheme(serialize_scheme(s))[0] == s


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet='ab {};,"#\\\n@.0123456789-instrumentpaelcod', max_size=80))
def test_parser_never_crashes(source):
    scheme, diags = parse_scheme(source)
    if scheme is None:
        assert any(d.is_error for d in diags)
    for d in diags:
        assert d.line >= 1 and d.column >= 1
