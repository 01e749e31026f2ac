import json
import subprocess
import sys

import pytest

from seqdyn.cli import main
from seqdyn.dynamics import DynamicsSpec, build_graph, to_dot
from seqdyn.equilibria import equilibrium_report
from seqdyn.fixtures import fixture_path, load_fixture
from seqdyn.harness import GenParams, report_json, verify


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fig1_path():
    return str(fixture_path("fig1"))


def test_graph_dot_fig1(capsys, fig1_path):
    code, out, _ = run(capsys, "graph", fig1_path, "--dynamics", "I,L,1P", "--dot", "-")
    assert code == 0
    edges = sorted(line.strip() for line in out.splitlines() if "->" in line)
    assert edges == ['"lr" -> "rr" [players="1"];', '"rl" -> "ll" [players="1"];', '"rr" -> "rl" [players="2"];']
    assert out == to_dot(build_graph(load_fixture("fig1"), DynamicsSpec.of("I", "L", "1P")))


def test_graph_dot_is_deterministic(capsys, fig1_path, tmp_path):
    target = tmp_path / "g.dot"
    assert run(capsys, "graph", fig1_path, "--dynamics", "I,L", "--dot", str(target))[0] == 0
    first = target.read_bytes()
    run(capsys, "graph", fig1_path, "--dynamics", "I,L", "--dot", str(target))
    assert target.read_bytes() == first


def test_graph_edge_list(capsys, fig1_path):
    code, out, _ = run(capsys, "graph", fig1_path, "--dynamics", "SI,A", "--json")
    doc = json.loads(out)
    assert code == 0
    assert {(e["from"], e["to"]) for e in doc["edges"]} == {("lr", "rr"), ("lr", "ll"), ("rr", "rl"), ("rl", "ll")}


def test_expect_terminating(capsys, fig1_path):
    assert run(capsys, "graph", fig1_path, "--dynamics", "I,L", "--expect-terminating")[0] == 1
    assert run(capsys, "graph", fig1_path, "--dynamics", "I,L,1P", "--expect-terminating")[0] == 0
    assert run(capsys, "analyze", fig1_path, "--expect-terminating")[0] == 1
    assert run(capsys, "analyze", fig1_path, "--dynamics", "SI", "--expect-terminating")[0] == 0


def test_analyze_leaf(capsys):
    code, out, _ = run(capsys, "analyze", str(fixture_path("leaf")), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["profiles"] == 1
    assert all(d["terminates"] and d["terminal"] == [""] for d in doc["dynamics"].values())
    assert doc["equilibria"] == {"ne": [""], "spe": [""], "sne": [""]}
    code, out, _ = run(capsys, "analyze", str(fixture_path("leaf")))
    assert "profiles: 1" in out and "SNE:  ε" in out


def test_analyze_fig1_text(capsys, fig1_path):
    _, out, _ = run(capsys, "analyze", fig1_path)
    assert "profiles: 4" in out
    assert "NE:   ll" in out and "SNE:  -" in out
    assert "{I,L}" in out and "cycles" in out


def test_equilibria_matches_library(capsys, fig1_path):
    code, out, _ = run(capsys, "equilibria", fig1_path, "--json")
    assert code == 0 and json.loads(out) == equilibrium_report(load_fixture("fig1"))
    _, out, _ = run(capsys, "equilibria", fig1_path, "--kind", "sne", "--json")
    doc = json.loads(out)
    assert set(doc["ll"]) == {"sne", "witnesses"} and doc["ll"]["witnesses"]["sne"]["coalition"] == ["1", "2"]
    _, out, _ = run(capsys, "equilibria", fig1_path, "--kind", "ne")
    assert "ll           NE   yes" in out


def test_prefs_layers_table2(capsys):
    code, out, _ = run(capsys, "prefs", str(fixture_path("table2")), "--check", "layers")
    assert code == 0
    assert out.strip() == "layers: {y,z} < {x} < {u,v,w}"
    _, out, _ = run(capsys, "prefs", str(fixture_path("table2")), "--json")
    assert json.loads(out)["report"]["layers"] == [["y", "z"], ["x"], ["u", "v", "w"]]


def test_prefs_checks(capsys, fig1_path):
    assert run(capsys, "prefs", fig1_path, "--check", "pattern")[0] == 1
    assert run(capsys, "prefs", fig1_path, "--check", "slo")[0] == 0
    assert run(capsys, "prefs", str(fixture_path("fig4_left")), "--check", "acyclic")[0] == 1
    assert run(capsys, "prefs", str(fixture_path("terminating_not_layerable")), "--check", "layers")[0] == 1
    assert run(capsys, "prefs", str(fixture_path("fig4_left")), "--check", "layers")[0] == 1


def test_decompose(capsys, fig1_path):
    code, out, _ = run(capsys, "decompose", fig1_path, "--from", "lr", "--to", "ll")
    assert code == 0 and out.strip() == "lr -> ll"
    code, out, _ = run(capsys, "decompose", fig1_path, "--from", "/=l,/r=r", "--to", "ll", "--long-names")
    assert out.strip() == "/=l,/r=r -> /=l,/r=l"
    code, _, err = run(capsys, "decompose", fig1_path, "--from", "ll", "--to", "rr")
    assert code == 2 and "not a subgame-improvement" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "lemma1", "--trials", "10", "--seed", "3", "--json")
    assert code == 0
    assert out.strip() == report_json(verify("lemma1", GenParams(seed=3, pref_kind="arbitrary"), 10))
    code, out, _ = run(capsys, "verify", "--claim", "prop3", "--trials", "60", "--pref-kind", "acyclic")
    assert code == 1 and "first counterexample" in out
    code, out, _ = run(capsys, "verify", "--claim", "prop3", "--trials", "20", "--pref-kind", "swo")
    assert code == 0 and "failed: 0" in out


def test_input_errors(capsys, tmp_path, fig1_path):
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(capsys, "analyze", str(bad))[0] == 2
    bad.write_text(json.dumps({"tree": {"player": "1", "moves": {}}}))
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "graph", fig1_path, "--dynamics", "I,Q")[0] == 2
    assert run(capsys, "decompose", fig1_path, "--from", "zz", "--to", "ll")[0] == 2
    assert run(capsys, "verify", "--claim", "lemma1", "--max-branching", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--claim", "thm9"])
    assert exc.value.code == 2


def test_profile_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("SEQDYN_PROFILE_CAP", "4")
    code, _, err = run(capsys, "analyze", str(fixture_path("fig5_left")))
    assert code == 2 and "cap" in err


def test_bundled_name_fallback(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(capsys, "analyze", "fig1.json")[0] == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "seqdyn", "graph", "fig1.json", "--dynamics", "I,L,1P", "--dot", "-"],
                         capture_output=True, text=True, check=True)
    assert '"rr" -> "rl"' in out.stdout
