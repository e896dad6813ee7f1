from fractions import Fraction as F
import json

import pytest

from logbm.errors import InternalInconsistency
from logbm.harness import (
    HEXAGON_GRID,
    CampaignConfig,
    hexagon,
    hexagon_prism,
    hexagon_scenario,
    hexagon_table,
    make_trial,
    margin_study,
    replay_candidate,
    run_campaign,
)
import logbm.harness as hz


def small(**kw):
    base = dict(dims=[2, 3], trials_per_dim=6, seed=7)
    base.update(kw)
    return CampaignConfig(**base)


def test_trials_are_deterministic():
    a, b = make_trial(small(), 3, 4), make_trial(small(), 3, 4)
    assert a.to_dict() == b.to_dict()
    assert make_trial(small(seed=8), 3, 4).to_dict() != a.to_dict()


def test_campaign_zero_violations_and_threads_identical(monkeypatch):
    cfg = small(checks=["theorem_1_4", "theorem_1_7", "minkowski_second", "holder",
                        "logbm_conjecture"])
    monkeypatch.setenv("LOGBM_THREADS", "1")
    one = run_campaign(cfg).to_dict(include_time=False)
    monkeypatch.setenv("LOGBM_THREADS", "2")
    two = run_campaign(cfg).to_dict(include_time=False)
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)
    assert all(s["violations"] == 0 for s in one["perCheck"].values())
    assert one["perCheck"]["theorem_1_4"]["trials"] == 12


def test_config_round_trip_and_validation():
    cfg = small(trials_per_dim={2: 3, 3: 1}, tolerance=hz.Tolerances(1e-8, 1e-6))
    back = CampaignConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert back.to_dict() == cfg.to_dict()
    assert back.trials(2) == 3
    with pytest.raises(ValueError):
        CampaignConfig.from_dict({"checks": ["nope"]})
    with pytest.raises(ValueError):
        CampaignConfig.from_dict({"bogus": 1})


def test_strict_campaign_raises_with_summary(monkeypatch):
    def boom(name, trial, mode="exact", tol=None):
        raise InternalInconsistency("forced", {"K": None})

    monkeypatch.setattr(hz, "run_check", boom)
    with pytest.raises(InternalInconsistency) as e:
        run_campaign(small(dims=[2], trials_per_dim=2, checks=["holder"]))
    assert e.value.summary.per_check["holder"].internal_inconsistencies == 2
    s = run_campaign(small(dims=[2], trials_per_dim=2, checks=["holder"], strict=False))
    assert len(s.inconsistencies) == 2


def test_margin_study_sorted():
    rows = margin_study(small(dims=[2], trials_per_dim=5, checks=["theorem_1_7", "holder"]))
    margins = [r["margin"] for r in rows]
    assert margins == sorted(margins)
    assert all(r["nearEquality"] == (r["margin"] < 1e-6) for r in rows)


def test_replay_of_serialized_candidate():
    # a prop_6_2_pair violation on the hexagon prism serializes and replays identically
    reports = hexagon_scenario((F(1, 10),))
    pair = next(r for r in reports if r.check_name == "prop_6_2_pair")
    assert pair.counterexample_candidate
    trial = make_trial(small(), 3, 0)
    trial.K = hexagon_prism(F(1, 10))
    trial.v, trial.w = (1, 0, 0), (0, 1, 0)
    cand = {"report": pair.to_dict(), "instance": trial.to_dict()}
    again = replay_candidate(json.loads(json.dumps(cand))).to_dict()
    want = pair.to_dict()
    for key in ("epsilon", "split"):  # scenario annotations
        want["details"].pop(key)
    assert again == want


def test_hexagon_family():
    assert hexagon(0).volume == 4
    assert hexagon_prism(F(1, 2)).volume == 2 * hexagon(F(1, 2)).volume
    reports = hexagon_scenario()
    table = hexagon_table(reports)
    assert len(table) == len(HEXAGON_GRID)
    by_eps = {row["epsilon"]: row for row in table}
    row = by_eps["1/10"]
    assert row["split"] and row["aggregate"]["holds"] and not row["pairwise"]["holds"]
    assert (row["aggregate"]["lhs"], row["aggregate"]["rhs"]) == ("3044/95", "12800/399")
    assert (row["pairwise"]["lhs"], row["pairwise"]["rhs"]) == ("156/19", "3200/399")
    assert by_eps["0"]["pairwise"]["holds"]
    assert all(r["split"] for e, r in by_eps.items() if e != "0")
