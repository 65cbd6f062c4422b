import csv
import io
import json

import pytest

from grasshkr import render
from grasshkr.cli import main
from grasshkr.hkr import gr_table, hkr_report

from conftest import par_of


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hkr_json_round_trip(capsys):
    code, out, _ = run(capsys, "hkr", "C4", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == render.SCHEMA_VERSION
    assert render.report_from_json(out) == hkr_report(par_of("C4", 3))
    assert doc["report"]["verdict"] == "not_affine"


@pytest.mark.parametrize("name,nodes", [("B3", (2,)), ("A3", (2,)), ("G2", (1,))])
def test_report_round_trip_with_closed_form(name, nodes):
    rep = hkr_report(par_of(name, nodes))
    assert render.report_from_json(render.report_json(rep)) == rep


def test_gr_table_json_round_trip_and_csv_parity(capsys):
    _, js, _ = run(capsys, "gr-table", "B3", "2", "--format", "json")
    tables = render.gr_tables_from_json(js)
    par = par_of("B3", 2)
    assert tables == [gr_table(par, p) for p in range(par.dimension + 1)]
    _, cs, _ = run(capsys, "gr-table", "B3", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert len(rows) == sum(len(t.rows) for t in tables)
    assert rows[0].keys() == set(render.GR_FIELDS)


def test_hkr_csv_parity(capsys):
    _, js, _ = run(capsys, "hkr", "B4", "3", "--format", "json")
    _, cs, _ = run(capsys, "hkr", "B4", "3", "--format", "csv")
    assert len(list(csv.DictReader(io.StringIO(cs)))) == len(json.loads(js)["report"]["pieces"])


def test_text_is_deterministic(capsys):
    a = run(capsys, "gr-table", "C4", "3", "-p", "3")[1]
    b = run(capsys, "gr-table", "C4", "3", "-p", "3")[1]
    assert a == b and "1155" in a


def test_coset_graph_dot_and_json(capsys):
    code, out, _ = run(capsys, "coset-graph", "A3", "1,3", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    assert out.count("->") == 19
    _, js, _ = run(capsys, "coset-graph", "B3", "2", "--format", "json")
    doc = json.loads(js)
    assert len(doc["nodes"]) == 12 and len(doc["edges"]) == 16
    _, js, _ = run(capsys, "coset-graph", "A3", "2", "--format", "json")
    assert len(json.loads(js)["nodes"]) == 6


def test_classify_and_kostant(capsys):
    code, out, _ = run(capsys, "classify", "G2", "1")
    assert code == 0 and "coadjoint                  True" in out and "larger automorphism group" in out
    code, out, _ = run(capsys, "kostant", "B3", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["decomposition"]["theorem"] == "adjoint"
    assert sum(d for _, d in doc["decomposition"]["degrees"]["2"]) == 210


def test_bott_witness(capsys):
    code, out, _ = run(capsys, "bott-witness", "C4", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["witness"] == {"p": 2, "q": 1, "weight": [0, 0, 0, 1], "omega_degree": 10}


def test_scan_writes_one_file_per_variety(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", "--max-rank", "3", "--format", "json", "--out", str(tmp_path))
    assert code == 0
    rows = json.loads(out)["entries"]
    assert {r["verdict"] for r in rows} == {"hochschild_affine"}
    assert len(list(tmp_path.glob("*.json"))) == len(rows) == 2 + 3 + 2 + 3 + 2 + 3 + 2


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "A1xA2", "1"],
        ["hkr", "A1+A2", "1"],
        ["hkr", "A3", "2", "--format", "dot"],
        ["gr-table", "A3", "2", "-p", "9"],
        ["classify", "Q3", "1"],
        ["classify", "A3", "5"],
        ["nonsense"],
        ["scan", "--max-rank", "1"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_kunneth_message(capsys):
    _, _, err = run(capsys, "classify", "A1xA2", "1")
    assert "Kunneth" in err


def test_resource_cap_exit_code(capsys, monkeypatch):
    from grasshkr import levirep

    monkeypatch.setenv("GRASSHKR_MAX_KEYS", "5")
    par = par_of("E6", 2)
    levirep._LAYERS.pop(par, None)
    code, _, err = run(capsys, "hkr", "E6", "2")
    assert code == 3 and "resource cap" in err


def test_env_p_cap(capsys, monkeypatch):
    monkeypatch.setenv("GRASSHKR_P_CAP", "2")
    _, js, _ = run(capsys, "hkr", "C4", "3", "--format", "json")
    assert json.loads(js)["report"]["p_range"] == [0, 2]
