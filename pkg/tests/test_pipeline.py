import json

import pytest

from fermatquad.dataset import load_bundled
from fermatquad.pipeline import run_pipeline

from conftest import SMALL_D


@pytest.mark.parametrize("d", [3, 17, 30])
def test_reports_are_byte_identical(d):
    ds = load_bundled()
    a, b = run_pipeline(d, ds), run_pipeline(d, load_bundled())
    assert a.dumps() == b.dumps()
    assert a.to_text() == b.to_text()


@pytest.mark.parametrize("d", SMALL_D + [30, 79])
def test_offline_run_and_consistency(d):
    j = json.loads(run_pipeline(d, load_bundled()).dumps())
    v = j["verdict"]
    unresolved = [r for r in j["elimination"] if not r["resolved"]]
    if v["outcome"].startswith("PROVEN"):
        assert not unresolved and not v["missing_levels"] and j["irreducibility"]["clean"]
    if v["outcome"] == "DATA_INCOMPLETE":
        assert v["missing_levels"] and not unresolved
    if v["outcome"] == "OBSTRUCTED":
        assert unresolved or not j["irreducibility"]["clean"]
    covered = {r["level"] for r in j["elimination"]} | set(j["empty_levels"])
    assert covered | set(v["missing_levels"]) == set(j["levels"]["distinct_levels"])


def test_report_sections():
    rep = run_pipeline(17, load_bundled())
    j = rep.to_json()
    assert j["field"]["fundamental_unit"] == "4+√17"
    assert j["levels"]["cokernel_size"] == 4
    assert j["elimination"][0]["c_f"] == "0"
    assert "PROVEN_CONGRUENCE_CLASSES (p = 3, 5 mod 8)" in rep.to_text()
    assert "HALBERSTADT_KRAUS" in j["verdict"]["cited"]


def test_missing_data_is_reported_not_raised():
    rep = run_pipeline(30, None)
    assert rep.verdict.outcome.value == "DATA_INCOMPLETE"
    assert "P^8 * (3, √30)^2" in rep.to_json()["verdict"]["missing_levels"]
