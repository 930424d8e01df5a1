import json

import pytest

from fermatquad import cli
from fermatquad.dataset import bundled_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_field_info_text_and_json(capsys):
    code, out = run(capsys, "field-info", "79")
    assert code == 0 and "Cl = Z/3" in out.out
    code, out = run(capsys, "field-info", "10", "--format", "json")
    assert json.loads(out.out)["H"] == ["(1)", "(3, 1+√10)"]


def test_predict_levels(capsys):
    code, out = run(capsys, "predict-levels", "21", "--format", "json")
    j = json.loads(out.out)
    assert j["levels"]["distinct_levels"] == ["P", "P^4"]
    assert sum(r["scenario"] == "P ∤ abc" for r in j["levels"]["rows"]) == 1


def test_irreducibility(capsys):
    code, out = run(capsys, "irreducibility", "23")
    assert code == 0 and "clean: True" in out.out


def test_verdict_exit_codes(capsys, tmp_path):
    code, out = run(capsys, "verdict", "17", "--dataset", str(bundled_path()))
    assert code == 0 and "3, 5 mod 8" in out.out
    code, _ = run(capsys, "verdict", "2")
    assert code == 0
    code, out = run(capsys, "verdict", "7")
    assert code == 1 and "DATA_INCOMPLETE" in out.out
    code, out = run(capsys, "verdict", "12")
    assert code == 2 and "squarefree" in out.err


def test_out_file_and_full_report(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out = run(capsys, "verdict", "3", "--full", "--format", "json", "--out", str(dest))
    assert out.out == ""
    j = json.loads(dest.read_text(encoding="utf-8"))
    assert j["elimination"][0]["resolution"].startswith("matches E'")


def test_eliminate(capsys):
    code, out = run(capsys, "eliminate", "3")
    assert code == 0 and "C_f = 0" in out.out and "no data: P" in out.out


def test_bad_dataset_exits_with_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}", encoding="utf-8")
    code, out = run(capsys, "verdict", "3", "--dataset", str(bad))
    assert code == 2 and "schema" in out.err


def test_all_range(capsys):
    code, out = run(capsys, "all", "--range", "2..7")
    lines = out.out.splitlines()
    assert [ln.split()[0] for ln in lines] == ["d=2", "d=3", "d=5", "d=6", "d=7"]
    assert cli.parse_range("2..23") == [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23]
    with pytest.raises(SystemExit):
        cli.main(["all", "--range", "9..3"])


def test_all_parallel_matches_serial(capsys):
    _, a = run(capsys, "all", "--range", "2..6", "--format", "json")
    _, b = run(capsys, "all", "--range", "2..6", "--format", "json", "--jobs", "2")
    assert a.out == b.out


def test_fetch_verb(capsys, tmp_path, monkeypatch):
    calls = []

    def fake(d, level, endpoint, cache):
        calls.append((d, level.norm, endpoint, cache))
        return []

    monkeypatch.setattr(cli, "fetch_remote", fake)
    code, out = run(capsys, "fetch", "5", "--cache", str(tmp_path / "c.json"),
                    "--endpoint", "https://hmf.example")
    assert code == 0 and [c[1] for c in calls] == [4, 256]
    assert "P^4: 0 forms" in out.out
