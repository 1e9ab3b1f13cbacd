import json

import pytest

from oracles import ZOO, words
from otx.canonical import canonical_equal, canonize
from otx.characteristic import char_table, minimize_table
from otx.errors import CopylessError, OtxError, SchemaError, ValidationError
from otx.machines import StreamingTransducer, TwoWayTransducer, evaluate
from otx.serialize import (dumps, fixture_names, fixtures_dir, load_machine,
                           machine_from_dict, machine_to_dict)


def test_fixture_kinds():
    assert isinstance(load_machine("dup.sst"), StreamingTransducer)
    assert isinstance(load_machine(fixtures_dir() / "rev.2dfa.json"), TwoWayTransducer)
    assert isinstance(load_machine("fixtures/rev.2dfa.json"), TwoWayTransducer)
    assert set(ZOO) | {"loop.2dfa"} == set(fixture_names())


@pytest.mark.parametrize("name", ZOO)
def test_round_trip(zoo, name):
    m = zoo[name]
    again = load_machine(dumps(m))
    assert machine_to_dict(again) == machine_to_dict(m)
    assert all(evaluate(again, w) == evaluate(m, w) for w in words(4))


@pytest.mark.parametrize("name", ["dup.sst", "ab-variant-c", "evenid.2dfa"])
def test_canonical_and_table_round_trip(zoo, name):
    c = canonize(zoo[name])
    doc = machine_to_dict(c)
    assert doc["kind"] == "lookaround" and doc["canonical"] is True
    back = load_machine(json.dumps(doc))
    assert canonical_equal(back, c)
    t = minimize_table(char_table(zoo[name]))
    tdoc = machine_to_dict(t)
    assert tdoc["kind"] == "chartable"
    assert canonical_equal(minimize_table(machine_from_dict(tdoc)), t)


def test_copyless_violation_in_document():
    doc = json.loads(dumps(load_machine("dup.sst")))
    doc["transitions"]["q"]["a"]["ops"] = [["concat", "x", "y"], ["concat", "t1", "y"]]
    with pytest.raises(CopylessError):
        machine_from_dict(doc)
    with pytest.raises(ValidationError) as e:
        load_machine(json.dumps(doc))
    assert "<inline>" in str(e.value)


def test_schema_errors():
    with pytest.raises(SchemaError):
        load_machine('{"kind": "nfa", "input_alphabet": ["a"], "output_alphabet": ["a"]}')
    with pytest.raises(SchemaError):
        load_machine('{"kind": "sst"}')
    with pytest.raises(SchemaError) as e:
        load_machine('{"kind": "sst",\n "states": [}')
    assert "line 2" in str(e.value)
    with pytest.raises(SchemaError):
        machine_from_dict({"format": "otx/9", "kind": "sst"})
    with pytest.raises(OtxError):
        load_machine("no-such-machine")


def test_fixtures_override(tmp_path, monkeypatch):
    (tmp_path / "mine.json").write_text(dumps(load_machine("rev.2dfa")), encoding="utf-8")
    monkeypatch.setenv("OTX_FIXTURES", str(tmp_path))
    assert fixture_names() == ["mine"]
    assert evaluate(load_machine("mine"), "ab").letters == "ba"
