import json

import pytest
from hypothesis import given, settings, strategies as st

from eqchrom import io
from eqchrom.balmer import INF
from eqchrom.errors import SchemaViolation
from eqchrom.groups import PGroupSpec, build_lattice

specs = st.sampled_from([2, 3, 5]).flatmap(
    lambda p: st.lists(st.integers(1, 3), min_size=1, max_size=3).map(
        lambda ks: PGroupSpec(p, tuple(sorted(ks, reverse=True)))
    )
)


@settings(max_examples=30)
@given(specs)
def test_property_group_round_trip(spec):
    doc = io.group_to_json(spec)
    assert io.decode(json.loads(io.dumps(doc)), io.GROUP) == spec


def test_height_fn_round_trip():
    spec = PGroupSpec(2, (1, 1))
    fn = {"S0": INF, "S1": -1, "S2": 0, "S3": 4, "S4": 2}
    text = io.dumps(io.height_fn_to_json(spec, fn))
    doc = json.loads(text)
    assert doc["values"]["S0"] == "inf" and doc["values"]["S1"] == "-1"
    spec2, fn2 = io.decode(doc, io.HEIGHT_FN)
    assert spec2 == spec and fn2 == fn
    assert io.dumps(io.height_fn_to_json(spec2, fn2)) == text


@pytest.mark.parametrize("exps, pointer", [
    ([1, 2], "/exponents/1"),
    ([0], "/exponents/0"),
    (["a"], "/exponents/0"),
])
def test_malformed_exponents(exps, pointer):
    with pytest.raises(SchemaViolation) as ei:
        io.decode({"schema": io.GROUP, "p": 2, "exponents": exps}, io.GROUP)
    assert ei.value.to_json()["details"]["pointer"] == pointer


def test_wrong_schema_and_missing_fields():
    with pytest.raises(SchemaViolation) as ei:
        io.decode({"schema": "eqchrom.other/1"}, io.GROUP)
    assert ei.value.to_json()["details"]["pointer"] == "/schema"
    with pytest.raises(SchemaViolation):
        io.decode({"schema": io.HEIGHT_FN, "group": "2:[1]", "values": {"S9": 1}}, io.HEIGHT_FN)
    with pytest.raises(SchemaViolation):
        io.decode({"schema": io.NODES, "group": "2:[1]", "nodes": {"S0": 1}}, io.NODES)


def test_load_reports_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n  oops")
    with pytest.raises(SchemaViolation) as ei:
        io.load(p, io.GROUP)
    assert ei.value.to_json()["details"]["line"] == 2


def test_nodes_round_trip(tmp_path):
    spec = PGroupSpec(2, (1,))
    path = tmp_path / "n.json"
    io.store(path, io.nodes_to_json(spec, {"S1": "1", "S0": "1"}, N=4))
    spec2, nodes, prec = io.load(path, io.NODES)
    assert spec2 == spec and nodes == {"S0": "1", "S1": "1"} and prec == {"N": 4}
    assert build_lattice(spec2).spec == spec
