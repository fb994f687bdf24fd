from __future__ import annotations

import time

import pytest

from conftest import SAMPLES
from deltakoszul.algebra import build_algebra
from deltakoszul.cli.parser import parse
from deltakoszul.cli.workspace import dump_workspace, workspace_from_ses
from deltakoszul.common.errors import GenerationFailed, ModeMismatch, PreconditionNotCertified
from deltakoszul.common.types import Verdict
from deltakoszul.exactla import Field
from deltakoszul.horseshoe import split_ses
from deltakoszul.journal import iter_events
from deltakoszul.koszul import DeltaProfile
from deltakoszul.lab import (
    AuditReport,
    GenParams,
    Trial,
    evaluate_suite,
    random_algebra,
    random_module,
    random_ses,
    replay,
    run_audit,
    ses_from_vectors,
)
from deltakoszul.lab.runner import SUITES, _serialize, run_trial, suite_params, summarize, write_counterexample
from deltakoszul.module import simple, validate


def test_params_are_range_checked():
    for bad in (dict(max_vertices=4), dict(max_arrows=0), dict(relation_degrees=(4,)), dict(max_dim=5)):
        with pytest.raises(ValueError):
            GenParams(**bad)
    assert GenParams().degree_bound == 3
    assert GenParams(mode="graded").degree_bound == 5


def test_same_seed_same_instance():
    p = GenParams(seed=11)
    assert random_algebra(p) == random_algebra(GenParams(seed=11))

    def draw():
        try:
            return random_module(p, build_algebra(random_algebra(p)), budget=16)
        except GenerationFailed:
            return None

    a, b = draw(), draw()
    assert (a is None) == (b is None)
    assert a is None or a.same_as(b)


@pytest.mark.parametrize("mode", ["findim", "graded"])
def test_generated_instances_are_valid(mode):
    built = 0
    for seed in range(16):
        p = GenParams(seed=seed, mode=mode)
        spec = random_algebra(p)
        assert 1 <= len(spec.quiver.vertices) <= 2
        assert all(set(r.lengths) <= {2, 3} for r in spec.relations)
        t = build_algebra(spec)
        try:
            m = random_module(p, t, budget=16)
        except GenerationFailed:
            continue
        built += 1
        assert validate(m).ok
        assert all(d <= p.max_dim for d in m.dims.values())
        s = random_ses(p, m)
        assert s.M is m
    assert built > 0


def test_ses_from_no_vectors_is_trivial(kx3):
    s = ses_from_vectors(simple(kx3, 0), [])
    assert s.dims() == "0 -> 1 -> 1"


def test_suite_params_pick_the_mode():
    assert suite_params("cor25", GenParams()).mode == "graded"
    assert suite_params("thmD", GenParams(mode="graded")).mode == "findim"
    assert suite_params("lemma33", GenParams()).mode == "findim"


def test_report_counts_must_add_up():
    with pytest.raises(ValueError):
        AuditReport(suite="lemma33", trials=3, passes=1, failures=(), undetermined=1)
    rep = AuditReport(suite="lemma33", trials=2, passes=0, failures=(), undetermined=2)
    assert rep.verdict.status == "undetermined"
    assert rep.machine_lines() == ["audit lemma33 trials=2 passes=0 failures=0 undetermined=2"]


def test_summarize_empty():
    assert list(summarize([]).columns) == ["suite", "outcome", "count"]
    df = summarize([Trial("thmC", 0, "pass", "certified"), Trial("thmC", 1, "pass", "certified")])
    assert df.to_dict("records") == [{"suite": "thmC", "outcome": "pass", "count": 2}]


@pytest.mark.parametrize("suite", SUITES)
def test_small_audits_find_no_counterexamples(suite, isolated_state):
    journal = str(isolated_state / "events.jsonl")
    rep = run_audit(suite, 4, GenParams(seed=100), n_max=2, journal_path=journal)
    assert rep.failures == ()
    assert rep.trials == rep.passes + rep.undetermined == 4
    assert rep.seeds == (100, 101, 102, 103)
    events = iter_events(journal)
    assert [e["event"] for e in events] == ["audit_trial"] * 4 + ["audit_report"]

    again = run_audit(suite, 4, GenParams(seed=100), n_max=2, journal_path=str(isolated_state / "again.jsonl"))
    assert again.summary.to_dict("records") == rep.summary.to_dict("records")


def test_lab_defaults_to_a_prime_field():
    assert GenParams().field == "F32003"
    assert random_algebra(GenParams(seed=3)).field == Field.prime()
    assert random_algebra(GenParams(seed=3, field="Q")).field.is_rational


def test_mode_errors_surface(isolated_state):
    # suite_params would pick findim; run_trial takes the params as given
    raised = 0
    for seed in range(16):
        try:
            t = run_trial("thmD", GenParams(seed=seed, mode="graded"), 2)
        except ModeMismatch:
            raised += 1
        else:
            assert t.outcome == "undetermined"
            assert not t.detail.startswith("ModeMismatch")
    assert raised > 0


def test_audits_are_deterministic(isolated_state):
    a = run_audit("thmC", 3, GenParams(seed=5), n_max=2)
    b = run_audit("thmC", 3, GenParams(seed=5), n_max=2)
    assert (a.passes, a.failures, a.undetermined) == (b.passes, b.failures, b.undetermined)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_audit("thmB", 1)


def test_suites_check_their_instance_type(kx3):
    xi = parse((SAMPLES / "kx2_findim.dk").read_text(encoding="utf-8")).ses["xi"]
    with pytest.raises(ValueError):
        evaluate_suite("cor25", xi, 2)
    with pytest.raises(ValueError):
        evaluate_suite("thmC", simple(kx3, 0), 2)
    assert evaluate_suite("lemma33", xi, 2).verdict.ok


def test_counterexample_files_replay(isolated_state):
    xi = parse((SAMPLES / "kx2_findim.dk").read_text(encoding="utf-8")).ses["xi"]
    meta = {"seed": "7", "suite": "lemma32", "nmax": "3", "expect": "certified_up_to"}
    trial = Trial("lemma32", 7, "fail", "certified up to 3", counterexample=dump_workspace(workspace_from_ses(xi, meta=meta)))
    path = write_counterexample(trial, str(isolated_state / "cx"))
    assert path.endswith("lemma32-7.dk")

    journal = str(isolated_state / "events.jsonl")
    res = replay(path, journal_path=journal)
    assert res.seed == 7 and res.suite == "lemma32"
    assert res.reproduced
    assert res.lines()[0] == "replay lemma32 seed 7"
    assert iter_events(journal, kind="replay")[0]["recomputed"] == "certified_up_to"


def test_replay_flags_a_changed_verdict(isolated_state):
    xi = parse((SAMPLES / "kx2_findim.dk").read_text(encoding="utf-8")).ses["xi"]
    meta = {"suite": "extclosure", "nmax": "2", "expect": "fails"}
    path = isolated_state / "stale.dk"
    path.write_text(dump_workspace(workspace_from_ses(xi, meta=meta)), encoding="utf-8")
    res = replay(str(path))
    assert res.seed is None
    assert res.recomputed == "undetermined"
    assert not res.reproduced


def test_replay_uses_the_recorded_profile(exterior, isolated_state):
    s = split_ses(simple(exterior, 0), simple(exterior, 0))
    # the exterior algebra is Koszul but not 3-Koszul, so thmA has no certified inputs under dkoszul:3
    assert evaluate_suite("thmA", s, 3).verdict.status == "certified_up_to"
    with pytest.raises(PreconditionNotCertified):
        evaluate_suite("thmA", s, 3, DeltaProfile.dkoszul(3))

    text = _serialize("thmA", 9, 3, s, Verdict.undetermined(), DeltaProfile.dkoszul(3))
    assert "profile dkoszul:3" in text.splitlines()
    path = write_counterexample(Trial("thmA", 9, "fail", "undetermined", counterexample=text), str(isolated_state / "cx"))
    res = replay(path)
    assert res.recomputed == "undetermined"
    assert res.reproduced


@pytest.mark.slow
def test_audits_at_full_scale_stay_fast(isolated_state):
    plan = {"lemma33": 200, "cor25": 100, "thmA": 100, "thmC": 100, "thmD": 100}
    start = time.perf_counter()
    for suite, trials in plan.items():
        rep = run_audit(suite, trials, GenParams(seed=0), n_max=3)
        assert rep.failures == (), suite
    assert time.perf_counter() - start < 300
