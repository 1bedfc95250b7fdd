"""Re-verify the committed oracle fixtures against fresh oracle runs."""

import json
import pathlib

from satrank.fields import field_make
from satrank.groups import quaternion8, symmetric
from satrank.lie import heisenberg, special_linear
from satrank.oracle import oracle_commuting_pairs, oracle_maximal_elemab, oracle_srk_lie

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def load(name):
    return json.loads((FIXTURES / name).read_text())


def test_q8_fixture():
    data = load("q8_maximal_elemab.json")
    subs = oracle_maximal_elemab(quaternion8(), 2)
    got = [{"rank": s.rank, "elements": sorted(list(x) for x in s.elements)} for s in subs]
    assert got == data["result"]["classes"]


def test_s4_fixture():
    data = load("s4_maximal_elemab.json")
    subs = oracle_maximal_elemab(symmetric(4), 2)
    assert len(subs) == data["result"]["count"] == 4
    assert sorted(s.rank for s in subs) == data["result"]["ranks"] == [2, 2, 2, 2]


def test_sl2_fixture():
    data = load("sl2_srk.json")
    assert oracle_srk_lie(special_linear(2, field_make(3, 1))) == data["result"]["F3"] == 1
    assert oracle_srk_lie(special_linear(2, field_make(5, 1))) == data["result"]["F5"] == 1


def test_h3_fixture():
    data = load("h3_f3_srk.json")
    assert oracle_srk_lie(heisenberg(1, field_make(3, 1))) == data["result"]["srk"] == 2


def test_commuting_pairs_fixture():
    data = load("commuting_pairs_n2_q3.json")
    res = oracle_commuting_pairs(2, field_make(3, 1))
    assert res.exhaustive and res.count == data["result"]["count"] == 33


def test_fixture_schema():
    for path in sorted(FIXTURES.glob("*.json")):
        data = json.loads(path.read_text())
        assert {"instance", "oracle", "budget", "result", "command"} <= set(data)
