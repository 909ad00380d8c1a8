import json

import pytest

from helpers import ring
from torsam.homology import power_tor_vanishes
from torsam.module import Module
from torsam.resolution import projdim_finite
from torsam.scenarios import SCENARIOS, VERDICTS, ScenarioConfig, run_scenario

KEYS = {"claim", "anchor", "verdict", "values", "bounds"}


def test_sharper_power_bound_counterexample():
    # R = k[x], M = k, N = R, n = 0: m N = xR is free, so Tor_1 and Tor_2 vanish,
    # m N is nonzero and projdim k = 1, which is <= i but not <= i - 1.
    R = ring("k[x]")
    k = Module.residue_field(R)
    N = R.as_module()
    assert power_tor_vanishes(k, N, 1, 0) and power_tor_vanishes(k, N, 2, 0)
    assert not N.power_is_zero(1)
    assert projdim_finite(k) == (True, 1)


def test_recursion_forms():
    rep = run_scenario(ScenarioConfig("recursion", n_max=6))
    by = {r["anchor"]: r["verdict"] for r in rep.records}
    assert by["recursion-length-count"] == "holds"
    assert by["recursion-as-stated"] == "fails"
    assert by["recursion-hand-values"] == "holds" and by["recursion-hypothesis"] == "holds"
    assert rep.exit_code == 1


@pytest.mark.parametrize("name", ["noncm", "trivext-identity", "mprimary-vanishing", "hypersurface-ding"])
def test_record_schema(name):
    rep = run_scenario(ScenarioConfig(name, n_max=5))
    data = json.loads(rep.dumps())
    assert data["scenario"] == name
    for r in data["records"]:
        assert KEYS <= set(r) and r["verdict"] in VERDICTS
    c = data["summary"]
    assert c["total"] == len(data["records"]) == sum(c[v] for v in VERDICTS)
    # the embedded config reproduces the report
    again = run_scenario(ScenarioConfig(**data["config"]))
    assert again.dumps() == rep.dumps()


def test_fuzz_scenarios_small():
    for name in ("minor-lemma-fuzz", "intheorem-fuzz", "lv-fuzz", "testmodule"):
        rep = run_scenario(ScenarioConfig(name, trials=6, seed=1))
        assert rep.counts()["fails"] == 0
        assert "trigger_rate" in rep.to_json()["summary"]
        assert all("input" in r["instance"] for r in rep.records)


def test_input_driven_scenario():
    text = "ring R = k[x,y]\nmodule k over R = coker deg(0) [[x, y]]\n"
    rep = run_scenario(ScenarioConfig("cmgrowth", input=text, n_max=6))
    (r,) = rep.records
    assert r["verdict"] == "holds" and r["values"]["degree"] == 1


def test_exit_code_precedence():
    from torsam.scenarios import VerificationReport, record
    cfg = ScenarioConfig("noncm")
    mk = lambda *vs: VerificationReport("noncm", cfg, [record("c", "a", v) for v in vs])
    assert mk("holds", "vacuous").exit_code == 0
    assert mk("holds", "inconclusive").exit_code == 2
    assert mk("inconclusive", "fails").exit_code == 1


def test_unknown_scenario():
    with pytest.raises(KeyError):
        run_scenario(ScenarioConfig("nope"))
    assert len(SCENARIOS) == 16
