"""Batch audits over seeded random instances, counterexample files and replay."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import pandas as pd

from deltakoszul.algebra import build_algebra
from deltakoszul.common.errors import (
    GenerationFailed,
    MHLNotEstablished,
    PreconditionNotCertified,
    TruncationExceeded,
)
from deltakoszul.common.types import Verdict
from deltakoszul.config import get_settings
from deltakoszul.horseshoe import (
    AuditResult,
    ShortExactSequence,
    audit_extension_closure,
    audit_lemma32,
    audit_theorem_a,
    audit_theorem_c,
    audit_theorem_d,
    lemma33_conditions,
)
from deltakoszul.journal import append_event
from deltakoszul.koszul import DeltaProfile, cross_check_betti_criteria, infer_delta
from deltakoszul.lab.generators import GenParams, random_algebra, random_module, random_ses
from deltakoszul.module import Module
from deltakoszul.resolution import minimal_resolution

log = logging.getLogger(__name__)

SUITES = ("lemma33", "thmA", "thmC", "thmD", "cor25", "lemma32", "extclosure")

Outcome = Literal["pass", "fail", "undetermined"]
Instance = Union[ShortExactSequence, Module]

# The hypotheses were not met or a degree bound stopped the computation: the trial proves nothing.
# Other errors, ModeMismatch included, propagate.
_UNMET = (GenerationFailed, PreconditionNotCertified, MHLNotEstablished, TruncationExceeded)


@dataclass(frozen=True)
class Trial:
    suite: str
    seed: int
    outcome: Outcome
    verdict: str
    detail: str = ""
    counterexample: Optional[str] = None  # the instance in the input format, failures only


@dataclass(frozen=True)
class AuditReport:
    suite: str
    trials: int
    passes: int
    failures: Tuple[str, ...]  # counterexample file paths
    undetermined: int
    seeds: Tuple[int, ...] = ()
    summary: Optional[pd.DataFrame] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.trials != self.passes + len(self.failures) + self.undetermined:
            raise ValueError("trials must equal passes + failures + undetermined")

    @property
    def verdict(self) -> Verdict:
        if self.failures:
            return Verdict.fails(suite=self.suite, failures=len(self.failures))
        if self.passes == 0 and self.trials:
            return Verdict.undetermined(suite=self.suite)
        return Verdict.certified()

    def lines(self) -> List[str]:
        out = [
            f"audit {self.suite}: {self.trials} trial(s)",
            f"  passes       {self.passes}",
            f"  failures     {len(self.failures)}",
            f"  undetermined {self.undetermined}",
        ]
        out += [f"  counterexample {p}" for p in self.failures]
        return out

    def machine_lines(self) -> List[str]:
        out = [
            f"audit {self.suite} trials={self.trials} passes={self.passes} "
            f"failures={len(self.failures)} undetermined={self.undetermined}"
        ]
        out += [f"counterexample {p}" for p in self.failures]
        return out


def suite_params(suite: str, p: GenParams) -> GenParams:
    """The Betti/criteria cross-check needs graded instances; the quasi-Koszul transfer needs finite-dimensional ones."""
    if suite == "cor25" and p.mode != "graded":
        return replace(p, mode="graded")
    if suite == "thmD" and p.mode != "findim":
        return replace(p, mode="findim")
    return p


def make_instance(suite: str, p: GenParams) -> Instance:
    t = build_algebra(random_algebra(p))
    m = random_module(p, t)
    if suite == "cor25":
        return m
    return random_ses(p, m)


def cross_check_profile(m: Module, n_max: int) -> DeltaProfile:
    """The profile read off the Betti table when it has one, else plain Koszul."""
    return infer_delta(minimal_resolution(m, n_max)) or DeltaProfile.koszul()


def evaluate_suite(
    suite: str,
    instance: Instance,
    n_max: Optional[int] = None,
    profile: Optional[DeltaProfile] = None,
) -> AuditResult:
    """Run one suite on one instance; unmet hypotheses propagate as exceptions."""
    n_max = get_settings().N_MAX if n_max is None else n_max
    if suite == "cor25":
        if not isinstance(instance, Module):
            raise ValueError("cor25 runs on a module")
        prof = profile or cross_check_profile(instance, n_max)
        cc = cross_check_betti_criteria(instance, prof, n_max)
        facts: Dict[str, Any] = {
            "profile": prof.label(),
            "betti": " ".join(lv.status for lv in cc.betti),
            "criteria": " ".join(lv.status for lv in cc.criteria),
        }
        return AuditResult("betti test vs criteria", cc.verdict, facts)
    if not isinstance(instance, ShortExactSequence):
        raise ValueError(f"{suite} runs on a short exact sequence")
    if suite == "lemma33":
        rep = lemma33_conditions(instance, n_max, profile or DeltaProfile.koszul())
        facts = {line.split()[1]: line.split()[2] for line in rep.lines()}
        return AuditResult("equivalent radical conditions", rep.verdict(), facts)
    if suite == "thmA":
        return audit_theorem_a(instance, profile or DeltaProfile.koszul(), n_max)
    if suite == "thmC":
        return audit_theorem_c(instance, n_max)
    if suite == "thmD":
        return audit_theorem_d(instance, n_max)
    if suite == "lemma32":
        return audit_lemma32(instance, n_max)
    if suite == "extclosure":
        return audit_extension_closure(instance, n_max)
    raise ValueError(f"unknown suite {suite!r} (expected one of {', '.join(SUITES)})")


def _outcome(v: Verdict) -> Outcome:
    if v.ok:
        return "pass"
    if v.failed:
        return "fail"
    return "undetermined"


def _serialize(
    suite: str,
    seed: int,
    n_max: int,
    instance: Instance,
    verdict: Verdict,
    profile: Optional[DeltaProfile] = None,
) -> str:
    from deltakoszul.cli.workspace import dump_workspace, workspace_from_module, workspace_from_ses

    meta = {"seed": str(seed), "suite": suite, "nmax": str(n_max), "expect": verdict.status}
    if profile is not None:
        meta["profile"] = profile.label()
    if isinstance(instance, Module):
        return dump_workspace(workspace_from_module(instance, meta=meta))
    return dump_workspace(workspace_from_ses(instance, meta=meta))


def run_trial(suite: str, p: GenParams, n_max: int, profile: Optional[DeltaProfile] = None) -> Trial:
    """One seeded trial; never raises for unmet hypotheses."""
    try:
        instance = make_instance(suite, p)
        res = evaluate_suite(suite, instance, n_max, profile)
    except _UNMET as exc:
        return Trial(suite, p.seed, "undetermined", "undetermined", f"{type(exc).__name__}: {exc}")
    outcome = _outcome(res.verdict)
    text = None
    if outcome == "fail":
        text = _serialize(suite, p.seed, n_max, instance, res.verdict, profile)
    detail = " ".join(f"{k}={v}" for k, v in res.facts.items())
    return Trial(suite, p.seed, outcome, res.verdict.label(), detail, text)


def _run_trial_args(args: Tuple[str, GenParams, int, Optional[DeltaProfile]]) -> Trial:
    return run_trial(*args)


def summarize(trials: List[Trial]) -> pd.DataFrame:
    df = pd.DataFrame([{"suite": t.suite, "seed": t.seed, "outcome": t.outcome, "verdict": t.verdict} for t in trials])
    if df.empty:
        return pd.DataFrame(columns=["suite", "outcome", "count"])
    return df.groupby(["suite", "outcome"]).size().reset_index(name="count")


def write_counterexample(t: Trial, directory: Optional[str] = None) -> str:
    d = Path(directory or get_settings().COUNTEREXAMPLE_DIR)
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"{t.suite}-{t.seed}.dk"
    path.write_text(t.counterexample or "", encoding="utf-8")
    return str(path)


def run_audit(
    suite: str,
    trials: int,
    p: Optional[GenParams] = None,
    n_max: Optional[int] = None,
    workers: Optional[int] = None,
    profile: Optional[DeltaProfile] = None,
    counterexample_dir: Optional[str] = None,
    journal_path: Optional[str] = None,
) -> AuditReport:
    """``trials`` instances with seeds ``p.seed``, ``p.seed + 1``, ...; failures are written out as replayable files."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r} (expected one of {', '.join(SUITES)})")
    s = get_settings()
    n_max = s.N_MAX if n_max is None else n_max
    workers = s.AUDIT_WORKERS if workers is None else workers
    base = suite_params(suite, p or GenParams())
    jobs = [(suite, base.with_seed(base.seed + i), n_max, profile) for i in range(trials)]

    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial_args, jobs))
    else:
        results = [_run_trial_args(j) for j in jobs]
    # seeds are independent, the reduction does not depend on completion order
    results.sort(key=lambda t: t.seed)

    failures = []
    for t in results:
        event: Dict[str, Any] = {"event": "audit_trial", "suite": suite, "seed": t.seed, "outcome": t.outcome, "verdict": t.verdict}
        if t.outcome == "fail":
            path = write_counterexample(t, counterexample_dir)
            failures.append(path)
            event["counterexample"] = path
            log.warning("%s seed %d fails: %s", suite, t.seed, t.detail)
        append_event(event, journal_path)

    summary = summarize(results)
    counts = summary.set_index("outcome")["count"] if not summary.empty else pd.Series(dtype=int)
    report = AuditReport(
        suite=suite,
        trials=trials,
        passes=int(counts.get("pass", 0)),
        failures=tuple(failures),
        undetermined=int(counts.get("undetermined", 0)),
        seeds=tuple(t.seed for t in results),
        summary=summary,
    )
    append_event(
        {
            "event": "audit_report",
            "suite": suite,
            "trials": report.trials,
            "passes": report.passes,
            "failures": len(report.failures),
            "undetermined": report.undetermined,
        },
        journal_path,
    )
    return report


@dataclass(frozen=True)
class ReplayResult:
    suite: str
    seed: Optional[int]
    recorded: Optional[str]
    result: AuditResult

    @property
    def recomputed(self) -> str:
        return self.result.verdict.status

    @property
    def reproduced(self) -> bool:
        return self.recorded is None or self.recorded == self.recomputed

    def lines(self) -> List[str]:
        out = [f"replay {self.suite} seed {self.seed if self.seed is not None else '-'}"]
        out.append(f"  recorded   {self.recorded or '-'}")
        out.append(f"  recomputed {self.recomputed}")
        out += ["  " + line for line in self.result.lines()]
        return out


def replay(path: str, journal_path: Optional[str] = None) -> ReplayResult:
    """Re-run a counterexample file with the suite, depth and profile recorded in its header."""
    from deltakoszul.cli.parser import parse

    text = Path(path).read_text(encoding="utf-8")
    ws = parse(text, source=path)
    suite = ws.meta.get("suite")
    if suite not in SUITES:
        raise ValueError(f"{path}: missing or unknown 'suite' header")
    n_max = int(ws.meta["nmax"]) if "nmax" in ws.meta else None
    seed = int(ws.meta["seed"]) if "seed" in ws.meta else None
    profile = DeltaProfile.parse(ws.meta["profile"]) if "profile" in ws.meta else None
    if suite == "cor25":
        if not ws.modules:
            raise ValueError(f"{path}: no module to replay")
        instance: Instance = next(iter(ws.modules.values()))
    else:
        if not ws.ses:
            raise ValueError(f"{path}: no short exact sequence to replay")
        instance = next(iter(ws.ses.values()))
    try:
        res = evaluate_suite(suite, instance, n_max, profile)
    except _UNMET as exc:
        res = AuditResult(suite, Verdict.undetermined(reason=type(exc).__name__))
    out = ReplayResult(suite=suite, seed=seed, recorded=ws.meta.get("expect"), result=res)
    append_event(
        {"event": "replay", "path": path, "suite": suite, "recorded": out.recorded, "recomputed": out.recomputed},
        journal_path,
    )
    return out
