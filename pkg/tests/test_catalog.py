import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import catalogs_measuring
from schemeforge.catalog import (
    Catalog,
    CatalogEntry,
    CatalogError,
    CatalogSet,
    apply_entry,
    filter_catalogs,
    load_catalogs,
    merge_spec,
    parse_catalog,
)
from schemeforge.model import Actuator, Instrument, Point, SpecProps
from schemeforge.tagcodes import MeasuredVariable, display_code, parse_code

FIXTURES = Path(__file__).parent / "fixtures" / "catalogs"
T, P, F = MeasuredVariable.TEMPERATURE, MeasuredVariable.PRESSURE, MeasuredVariable.FLOW


def write(directory, name, data):
    path = directory / name
    path.write_text(json.dumps(data, ensure_ascii=False) if not isinstance(data, str) else data,
                    encoding="utf-8")
    return path


def test_empty_directory(tmp_path):
    catalogs, diags = load_catalogs(tmp_path)
    assert len(catalogs) == 0 and diags == []
    assert filter_catalogs(catalogs, T) == []


def test_missing_directory(tmp_path):
    with pytest.raises(OSError):
        load_catalogs(tmp_path / "nope")


def test_one_catalog_two_entries(tmp_path):
    write(tmp_path, "a.catalog.json", {"id": "a", "title": "A", "measures": ["T"], "entries": [
        {"id": "e1", "spec": {"name": "x"}}, {"id": "e2", "code": "TE"}]})
    write(tmp_path, "ignored.json", {"id": "zzz"})
    catalogs, diags = load_catalogs(tmp_path)
    assert diags == []
    assert [c.catalog_id for c in catalogs] == ["a"]
    assert [e.entry_id for e in catalogs.catalogs[0].entries] == ["e1", "e2"]
    assert catalogs.catalogs[0].entry("e2").suggested_code == "TE"


def test_duplicate_entry_ids_skip_the_file(tmp_path):
    write(tmp_path, "a.catalog.json", {"id": "a", "measures": ["T"],
                                       "entries": [{"id": "e"}, {"id": "e"}]})
    write(tmp_path, "b.catalog.json", {"id": "b", "measures": ["P"], "entries": []})
    catalogs, diags = load_catalogs(tmp_path)
    assert [c.catalog_id for c in catalogs] == ["b"]
    assert len(diags) == 1 and "duplicate entry" in diags[0].message
    assert diags[0].file.endswith("a.catalog.json")


def test_json_syntax_error_has_position(tmp_path):
    write(tmp_path, "bad.catalog.json", '{\n  "id": "x",\n  oops\n}')
    _, diags = load_catalogs(tmp_path)
    assert len(diags) == 1 and diags[0].line == 3


def test_duplicate_catalog_ids(tmp_path):
    write(tmp_path, "a.catalog.json", {"id": "same", "measures": ["T"]})
    write(tmp_path, "b.catalog.json", {"id": "same", "measures": ["P"]})
    catalogs, diags = load_catalogs(tmp_path)
    assert len(catalogs) == 1 and "duplicate catalog id" in diags[0].message


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"measures": ["T"]},
        {"id": "a"},
        {"id": "a", "measures": ["Z"]},
        {"id": "a", "measures": ["T"], "extra": 1},
        {"id": "a", "measures": ["T"], "entries": [{"id": "e", "code": "X"}]},
        {"id": "a", "measures": ["T"], "entries": [{"id": "e", "spec": {"colour": "red"}}]},
        {"id": "a", "measures": ["T"], "entries": [{"id": "e", "spec": {"mass": 3}}]},
        {"id": "a", "measures": ["T"], "entries": [{"spec": {}}]},
    ],
)
def test_parse_catalog_rejects(data):
    with pytest.raises(CatalogError):
        parse_catalog(data)


def test_fixture_catalogs():
    catalogs, diags = load_catalogs(FIXTURES)
    assert diags == []
    assert [c.catalog_id for c in filter_catalogs(catalogs, T)] == ["multi", "thermo"]
    assert [c.catalog_id for c in filter_catalogs(catalogs, P)] == ["multi", "pressure"]
    assert filter_catalogs(catalogs, MeasuredVariable.LEVEL) == []


def test_find_entry():
    catalogs, _ = load_catalogs(FIXTURES)
    cat, entry = catalogs.find_entry("metran-910")
    assert cat.catalog_id == "thermo" and entry.suggested_code == "TIR"
    assert catalogs.find_entry("thermo/tsm-50m")[1].entry_id == "tsm-50m"
    with pytest.raises(CatalogError, match="unknown"):
        catalogs.find_entry("pressure/metran-910")
    dup = CatalogSet((Catalog("a", "", frozenset({T}), (CatalogEntry("e", SpecProps()),)),
                      Catalog("b", "", frozenset({T}), (CatalogEntry("e", SpecProps()),))))
    with pytest.raises(CatalogError, match="ambiguous"):
        dup.find_entry("e")


letters = st.sampled_from(sorted(m.letter for m in MeasuredVariable))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sets(letters, min_size=1, max_size=5), max_size=12), letters)
def test_filter_is_sound_and_complete(measure_sets, query):
    cats = CatalogSet(tuple(
        parse_catalog({"id": f"c{i}", "measures": sorted(m)}) for i, m in enumerate(measure_sets)))
    variable = MeasuredVariable.from_letter(query)
    got = sorted(c.catalog_id for c in filter_catalogs(cats, variable))
    assert got == catalogs_measuring(cats, variable)


def test_merge_spec_keeps_existing_fields():
    base = SpecProps(name="old", note="keep me", mass="1")
    merged = merge_spec(base, SpecProps(name="new", mass=""))
    assert merged == SpecProps(name="new", note="keep me", mass="1")


def test_apply_changes_code_and_flags_regeneration():
    catalogs, _ = load_catalogs(FIXTURES)
    _, entry = catalogs.find_entry("thermo/metran-910")
    inst = Instrument("t", Point(0, 0), parse_code("TI"), spec=SpecProps(note="на щите"))
    new, regen = apply_entry(inst, entry)
    assert regen is True
    assert display_code(new.code) == "TIR"
    assert new.spec.type_brand == "Метран-910" and new.spec.note == "на щите"
    again, regen2 = apply_entry(new, entry)
    assert again == new and regen2 is False


def test_apply_without_code_keeps_code():
    catalogs, _ = load_catalogs(FIXTURES)
    _, entry = catalogs.find_entry("tsm-50m")
    inst = Instrument("t", Point(0, 0), parse_code("TE"))
    new, regen = apply_entry(inst, entry)
    assert not regen and new.code == inst.code and new.spec.type_brand == "ТСМ-50М"


def test_apply_to_actuator_copies_spec_only():
    entry = CatalogEntry("v", SpecProps(type_brand="25ч945нж"), "TE")
    new, regen = apply_entry(Actuator("y", Point(0, 0)), entry)
    assert not regen and new.spec.type_brand == "25ч945нж"


spec_fields = st.text(alphabet="abc ", max_size=4)


@settings(max_examples=100, deadline=None)
@given(st.builds(SpecProps, name=spec_fields, note=spec_fields, mass=spec_fields),
       st.builds(SpecProps, name=spec_fields, type_brand=spec_fields),
       st.sampled_from([None, "TE", "TIR", "PI"]))
def test_apply_is_idempotent_and_never_erases(base, update, code):
    inst = Instrument("t", Point(0, 0), parse_code("TI"), spec=base)
    once, _ = apply_entry(inst, CatalogEntry("e", update, code))
    twice, regen = apply_entry(once, CatalogEntry("e", update, code))
    assert twice == once and regen is False
    for name in ("name", "note", "mass", "type_brand"):
        if getattr(base, name):
            assert getattr(once.spec, name)


def test_random_catalog_files_round_trip(tmp_path):
    rng = random.Random(4)
    expected = {}
    for i in range(10):
        measures = rng.sample("DEFGKLMPQRSTUVW", rng.randint(1, 3))
        write(tmp_path, f"c{i}.catalog.json", {"id": f"c{i}", "measures": measures,
                                               "entries": [{"id": f"e{i}"}]})
        expected[f"c{i}"] = set(measures)
    catalogs, diags = load_catalogs(tmp_path)
    assert diags == []
    assert {c.catalog_id: {m.letter for m in c.measures} for c in catalogs} == expected
