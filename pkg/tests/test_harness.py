import json

import pytest

from qhecke import harness
from qhecke.families import DomainError


def test_group_sizes():
    sizes = {g: len(harness.registry(g)) for g in harness.GROUPS}
    assert sizes["enumeration"] == 6
    assert sizes["background"] >= 30
    assert sum(sizes.values()) == len(harness.registry("all"))


def test_ids_unique_and_ordered():
    ids = [c.id for c in harness.registry("all")]
    assert len(ids) == len(set(ids))
    assert ids == [c.id for c in harness.registry("all")]


def test_default_orders_follow_acceptance():
    by_id = {c.id: c for c in harness.registry("all")}
    assert by_id["base1"].order == 40
    assert by_id["mf1[t=3,m=1]"].order == 20
    assert by_id["mf1[t=2,m=0]"].order == 30
    assert by_id["r7[t=2,m=1]"].order == 25
    assert by_id["jtp[z=(1,1,0),M=1]"].order == 200
    assert by_id["mz_collapse[k=0]"].lattice == 2


def test_parameter_grids():
    mf4 = [c.kwargs for c in harness.registry("theorems") if c.recipe == "mf4"]
    assert [(p["t"], p["m"]) for p in mf4] == [(1, 0), (1, 1), (1, 2)] + [(2, m) for m in range(6)]


def test_domain_rejected_at_registration():
    with pytest.raises(DomainError):
        harness.make_case("mf1", t=2, m=1)
    with pytest.raises(DomainError):
        harness.make_case("umixed", t=1, m=1)
    with pytest.raises(KeyError):
        harness.make_case("mf9", t=1, m=1)


def test_pass_report():
    rep = harness.verify(harness.make_case("mf1", 20, t=1, m=1))
    assert rep.passed and rep.witness is None
    assert rep.line() == "PASS mf1[t=1,m=1] to q^20"


def test_failure_carries_witness():
    rep = harness.verify(harness.make_case("mf4", 10, t=1, m=1, lead_sign=-1))
    assert not rep.passed
    assert rep.witness[:2] == (0, 0)
    assert "first mismatch at q^0 x^0" in rep.line()


def test_rerun_lower_order():
    case = harness.make_case("end2", t=2, m=-1)
    assert harness.verify(case).passed
    assert harness.verify(case, case.order - 5).passed


def test_json_report_is_deterministic():
    a = harness.run_suite("enumeration", order=8).to_json()
    b = harness.run_suite("enumeration", order=8).to_json()
    assert a == b
    d = json.loads(a)
    assert d["passed"] and d["cases"] == 6 and "wall" not in d["reports"][0]


def test_timings_opt_in():
    rep = harness.verify(harness.make_case("base1", 10))
    assert "wall" in rep.to_dict(timings=True)


def test_jobs_precedence(monkeypatch):
    monkeypatch.delenv(harness.JOBS_ENV, raising=False)
    assert harness.resolve_jobs() == 1
    monkeypatch.setenv(harness.JOBS_ENV, "3")
    assert harness.resolve_jobs() == 3
    assert harness.resolve_jobs(2) == 2
    with pytest.raises(ValueError):
        harness.resolve_jobs(0)


def test_parallel_matches_serial():
    cases = harness.registry("base")[:4]
    serial = harness.run_cases(cases, 1, 10)
    par = harness.run_cases(cases, 2, 10)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in par]


def test_unknown_suite():
    with pytest.raises(KeyError):
        harness.registry("nope")
