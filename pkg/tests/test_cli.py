import json

import pytest

from dormant.cli import main
from dormant.semigraph import alternative_graph, standard_graph, to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fusion_csv(capsys):
    code, out, _ = run(capsys, "fusion", "--p", "3", "--level", "2", "--format", "csv")
    assert code == 0
    fusion_part, char_part = out.strip().split("\n\n")
    assert len(fusion_part.splitlines()) == 1 + 11
    assert len(char_part.splitlines()) == 1 + 3


def test_fusion_level_one(capsys):
    code, out, _ = run(capsys, "fusion", "--p", "3", "--level", "1", "--format", "csv")
    assert code == 0 and out.split("\n\n")[0].strip().splitlines()[1:] == ["1,1,1,1"]


def test_fusion_bad_prime(capsys):
    code, _, err = run(capsys, "fusion", "--p", "4", "--level", "1")
    assert code == 2 and "p must be an odd prime" in err


def test_degree(capsys):
    code, out, _ = run(capsys, "degree", "--p", "3", "--level", "2", "--genus", "2", "--marked", "0")
    assert code == 0 and "degree: 11" in out
    code, out, _ = run(capsys, "degree", "--p", "5", "--level", "1", "--genus", "0", "--marked", "3", "--radii", "1,1,1")
    assert code == 0 and "degree: 1" in out
    code, out, _ = run(capsys, "degree", "--p", "3", "--level", "2", "--genus", "1", "--marked", "1", "--all-radii")
    assert code == 0 and "total: 5" in out


def test_degree_bad_radius(capsys):
    code, _, _ = run(capsys, "degree", "--p", "3", "--level", "2", "--genus", "0", "--marked", "3", "--radii", "1,3,1")
    assert code == 2


def test_degree_json_is_deterministic(capsys):
    args = ("degree", "--p", "5", "--level", "2", "--genus", "1", "--marked", "2", "--all-radii", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    json.loads(first)


def test_hypergeom(capsys):
    code, out, _ = run(capsys, "hypergeom", "--p", "3", "--level", "1", "--abc", "1,2,2")
    assert code == 0 and "full=true" in out and "1 + x" in out
    code, out, _ = run(capsys, "hypergeom", "--p", "3", "--level", "1", "--abc", "2,2,2")
    assert "full=false" in out
    code, _, _ = run(capsys, "hypergeom", "--p", "3", "--level", "1", "--abc", "0,1,1")
    assert code == 2


def test_enumerate(capsys, tmp_path):
    theta = tmp_path / "theta.json"
    theta.write_text(to_json(alternative_graph(2, 0)))
    code, out, _ = run(capsys, "enumerate", str(theta), "--p", "3", "--level", "2", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["numberings"]) == 11
    star = tmp_path / "star.json"
    star.write_text(to_json(standard_graph(0, 3)))
    code, out, _ = run(capsys, "enumerate", str(star), "--p", "3", "--level", "2", "--radii", "1,1,1", "--format", "json")
    assert json.loads(out)["numberings"] == [{"0": 0, "1": 0, "2": 0}]


def test_enumerate_bad_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [0,')
    code, _, err = run(capsys, "enumerate", str(bad), "--p", "3", "--level", "2")
    assert code == 2 and "line" in err


def test_budget_gives_exit_3(capsys):
    code, _, _ = run(capsys, "degree", "--p", "3", "--level", "2", "--genus", "2", "--marked", "0", "--budget", "5")
    assert code == 3


def test_verify_json_report(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--suite", "closedform", "--p-list", "3,5", "--level-max", "2",
                     "--format", "json", "--output", str(out_file))
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["suite"] == "closedform" and "version" in report
    assert report["checks"] and all(c["pass"] for c in report["checks"])
    assert set(report["checks"][0]) >= {"name", "params", "expected", "actual", "pass"}


def test_verify_catalog(capsys, tmp_path):
    run(capsys, "degree", "--p", "3", "--level", "2", "--genus", "2", "--marked", "0", "--cache-dir", str(tmp_path))
    code, out, _ = run(capsys, "verify", "--suite", "catalog", "--cache-dir", str(tmp_path))
    assert code == 0


def test_unknown_suite(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify"])
    assert info.value.code == 2
