import json

import pytest

import saxl_graphs.config as cfg
from saxl_graphs.cli import EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, Analyses, main, run
from saxl_graphs.fileio import write_gens
from saxl_graphs.perm import Permutation
from saxl_graphs.report import parse


@pytest.fixture(autouse=True)
def isolated_config(config_home):
    return config_home


def read_report(path):
    return parse(path.read_text(encoding="utf-8"))


def test_run_everything(tmp_path):
    path = tmp_path / "pgl.json"
    assert main(["run", "pgl2:7:pl", "--all", "--samples", "200", "--json", str(path)]) == EXIT_OK
    report = read_report(path)
    assert (report.degree, report.order, report.b) == (8, 336, 3)
    assert report.val == 7 and report.vertices == 8 and report.diameter == 1
    assert report.complete and report.cnc and report.arc_transitive
    assert report.cnc_strong is True
    assert report.reg == 1
    assert report.isigma_complete and report.irredundant_max == 3
    assert report.prob["k"] == 3 and report.prob["q_mc"]["samples"] == 200
    assert report.wreath == "skipped(not a wreath product recipe)"


def test_undefined_graph_is_skipped(tmp_path):
    path = tmp_path / "cyc.json"
    assert main(["run", "cyc:6", "--base", "--saxl", "--json", str(path)]) == EXIT_OK
    report = read_report(path)
    assert report.b == 1
    assert report.val == "skipped(graph undefined: base size below 2)"
    assert report.diameter == "skipped(graph undefined: base size below 2)"
    assert report.cnc_strong == "skipped(graph undefined: base size below 2)"
    assert report.reg == "skipped(not requested)"


def test_strong_check_skipped_for_intransitive_group(tmp_path):
    cfg.FIXTURE_PATH = str(tmp_path)
    write_gens(str(tmp_path / "two.gens"), [Permutation.from_cycles(5, [(0, 1)]), Permutation.from_cycles(5, [(2, 3)])])
    report = run("gens:two.gens", Analyses(base=True, saxl=True))
    assert report.transitive is False and report.b == 2
    assert report.cnc is False
    assert report.cnc_strong == "skipped(intransitive)"


def test_report_to_stdout(capsys):
    assert main(["run", "sym:3", "--base", "--seed", "7"]) == EXIT_OK
    values = json.loads(capsys.readouterr().out)
    assert values["b"] == 2 and values["seed"] == 7


def test_wreath_check():
    report = run("wr(sym:3; cyc:2)", Analyses(base=True, wreath=True))
    assert report.b == 3
    assert report.wreath["distinguishing_number"] == 2
    assert report.wreath["predicted_b"] == 3 and report.wreath["match"]


def test_prob_for_other_k():
    report = run("sym:3", Analyses(prob_k=2), samples=100)
    assert report.prob["k"] == 2
    assert report.prob["q_exact"] == "1/3" and report.prob["qhat"] == "1/3"
    assert report.prob["thresholds"]["t"] == 2
    assert report.b == "skipped(not requested)"


def test_disconnected_diameter():
    report = run("fixture:pgl2-7-on-14", Analyses(saxl=True))
    assert report.diameter == "disconnected(2 components)"
    assert report.primitive is False


def test_usage_errors():
    assert main(["run", "sym:"]) == EXIT_USAGE
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["run", "sym:4", "--prob", "k=0"]) == EXIT_USAGE
    assert main(["reproduce", "nope"]) == EXIT_USAGE


def test_cap_exceeded():
    assert main(["run", "pairs(sym:5)", "--base", "--cap-degree", "5"]) == EXIT_CAP
    assert cfg.DEGREE_CAP == 5


def test_reproduce_writes_csv(tmp_path):
    path = tmp_path / "irredundant.csv"
    assert main(["reproduce", "irredundant", "--csv", str(path)]) == EXIT_OK
    assert len(path.read_text(encoding="utf-8").splitlines()) == 16


def test_reproduce_mismatch(monkeypatch):
    import saxl_graphs.tables as tables

    monkeypatch.setitem(tables.SUITES, "wrong", lambda: [tables.Case("b(sym:3)", 5, lambda: 2)])
    assert main(["reproduce", "wrong"]) == EXIT_MISMATCH


def test_export(tmp_path):
    path = tmp_path / "sigma.edges"
    assert main(["export", "pgl2:7:pl", "--format", "edges", "--out", str(path)]) == EXIT_OK
    assert len(path.read_text(encoding="utf-8").splitlines()) == 28
    assert main(["export", "cyc:6", "--out", str(tmp_path / "none.dot")]) == EXIT_USAGE


def test_fixtures(capsys):
    assert main(["fixtures"]) == EXIT_OK
    assert "m12-on-144" in capsys.readouterr().out


def test_example_script(monkeypatch, capsys, tmp_path):
    from saxl_graphs.examples import analyse_group

    dot = tmp_path / "pgl.dot"
    monkeypatch.setattr("sys.argv", ["analyse_group.py", "pgl2:7:pl", "--dot", str(dot)])
    analyse_group.main()
    out = capsys.readouterr().out
    assert "Base size 3" in out and "complete: True" in out
    assert dot.exists()
