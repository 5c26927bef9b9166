import math
import random

import pytest

from randomgen import random_scheme
from schemeforge.model import (
    Actuator,
    AnchorRef,
    ConnectionLine,
    Instrument,
    LocationTable,
    Panel,
    Point,
    Scheme,
    SpecProps,
    TableSection,
    validate,
)
from schemeforge.tagcodes import parse_code, parse_designation


def inst(id, x=0.0, y=0.0, **kw):
    return Instrument(id, Point(x, y), parse_code(kw.pop("code", "TI")), **kw)


def test_empty_scheme_is_valid():
    assert validate(Scheme()) == []


def test_duplicate_ids_give_one_error():
    diags = validate(Scheme(instruments=[inst("a"), inst("a", 50, 50)]))
    assert len(diags) == 1
    assert diags[0].is_error and diags[0].element_id == "a"
    assert "'a'" in diags[0].message


def test_duplicate_ids_across_collections():
    diags = validate(Scheme(panels=[Panel("x", Point(0, 0), 1, 1)], instruments=[inst("x")]))
    assert [d.element_id for d in diags] == ["x"]


def test_zero_section_height():
    table = LocationTable("t", Point(0, 0), 100, [TableSection("по месту", 0)])
    diags = validate(Scheme(tables=[table]))
    assert len(diags) == 1 and diags[0].element_id == "t"


@pytest.mark.parametrize(
    "table",
    [
        LocationTable("t", Point(0, 0), 0, [TableSection("a", 5)]),
        LocationTable("t", Point(0, 0), 10, []),
        LocationTable("t", Point(0, 0), 10, [TableSection("", 5)]),
        LocationTable("t", Point(math.nan, 0), 10, [TableSection("a", 5)]),
    ],
)
def test_table_invariants(table):
    assert validate(Scheme(tables=[table]))


def test_panel_must_have_area():
    assert validate(Scheme(panels=[Panel("p", Point(0, 0), 0, 10)]))
    assert validate(Scheme(panels=[Panel("p", Point(0, 0), 10, -1)]))


def test_line_needs_two_distinct_consecutive_points():
    one = ConnectionLine("l", [Point(0, 0)])
    twice = ConnectionLine("l", [Point(0, 0), Point(0, 0), Point(5, 5)])
    assert validate(Scheme(lines=[one]))
    assert validate(Scheme(lines=[twice]))


def test_dangling_anchor_reference_is_reported():
    line = ConnectionLine("l", [AnchorRef("ghost", "n"), Point(30, 30)])
    diags = validate(Scheme(lines=[line]))
    assert len(diags) == 1 and "ghost" in diags[0].message


def test_actuator_has_no_center_anchor():
    act = Actuator("v", Point(0, 0))
    line = ConnectionLine("l", [AnchorRef("v", "center"), Point(30, 30)])
    assert validate(Scheme(actuators=[act], lines=[line]))


def test_line_collapsing_after_snapping_is_invalid():
    # both raw ends snap onto the same anchor
    line = ConnectionLine("l", [Point(0.3, 5), Point(0, 4.8)])
    assert validate(Scheme(instruments=[inst("a")], lines=[line]))


def test_shared_designation_requires_same_type_brand():
    pos = parse_designation("3а")
    same = [inst("a", pos=pos, spec=SpecProps(type_brand="X")),
            inst("b", 30, 0, pos=pos, spec=SpecProps(type_brand="X"))]
    assert validate(Scheme(instruments=same)) == []
    differ = [same[0], inst("b", 30, 0, pos=pos, spec=SpecProps(type_brand="Y"))]
    diags = validate(Scheme(instruments=differ))
    assert len(diags) == 1 and "3а" in diags[0].message


def test_control_characters_rejected():
    assert validate(Scheme(instruments=[inst("a", comment="x\ny")]))
    assert validate(Scheme(instruments=[inst("a", spec=SpecProps(name="a\tb"))]))


def test_long_index_rejected():
    assert validate(Scheme(instruments=[inst("a", upper_index="123456789")]))
    assert validate(Scheme(instruments=[inst("a", upper_index="12345678")])) == []


def test_bad_id_rejected():
    assert validate(Scheme(instruments=[inst("1a")]))
    assert validate(Scheme(instruments=[inst("a.b")]))
    assert validate(Scheme(instruments=[inst("прибор-1")])) == []


def test_collections_are_kept_in_id_order():
    s = Scheme(instruments=[inst("b"), inst("a", 20, 0), inst("c", 40, 0)])
    assert [i.id for i in s.instruments] == ["a", "b", "c"]
    assert s.get("b").id == "b" and s.get("zz") is None


def test_validate_is_pure():
    for seed in range(20):
        s = random_scheme(random.Random(seed))
        broken = Scheme(s.panels, [*s.instruments, inst(s.instruments[0].id)] if s.instruments
                        else [inst("a"), inst("a")], s.actuators, s.tables, s.lines)
        assert validate(broken) == validate(broken)
        assert validate(broken)
