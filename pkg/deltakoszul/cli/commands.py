"""Command dispatch: one function per command, each returning a Report."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from deltakoszul.cli.render import Report, betti_rich_table, certificate_table, diagram_table, lines_table
from deltakoszul.cli.workspace import Workspace, dump_workspace
from deltakoszul.common.errors import DeltaKoszulError
from deltakoszul.common.types import Verdict, exit_code
from deltakoszul.config import get_settings
from deltakoszul.exactla import Field
from deltakoszul.horseshoe import (
    ShortExactSequence,
    build_minimal_horseshoe,
    classic_horseshoe,
    lemma33_conditions,
    radical_condition,
)
from deltakoszul.koszul import DeltaProfile, certify_algebra, certify_delta_koszul, check_criteria, infer_delta
from deltakoszul.lab import GenParams, replay, run_audit
from deltakoszul.module import Module
from deltakoszul.resolution import betti_table, minimal_resolution, projective_dimension, verify_resolution

log = logging.getLogger(__name__)

INPUT_ERROR = 3


class UsageError(DeltaKoszulError):
    """A command names something the workspace does not define."""


@dataclass(frozen=True)
class Command:
    name: str
    target: Optional[str] = None  # module, ses, suite or file, depending on the command
    n_max: Optional[int] = None
    delta: Optional[str] = None
    classic: bool = False
    trials: int = 20
    seed: int = 0
    mode: str = "findim"
    workers: Optional[int] = None
    field: Optional[str] = None  # audit instances


def _module(ws: Workspace, name: Optional[str]) -> Module:
    if name not in ws.modules:
        raise UsageError(f"unknown module {name!r}; defined: {', '.join(ws.modules) or 'none'}")
    return ws.modules[name]


def _ses(ws: Workspace, name: Optional[str]) -> ShortExactSequence:
    if name not in ws.ses:
        raise UsageError(f"unknown short exact sequence {name!r}; defined: {', '.join(ws.ses) or 'none'}")
    return ws.ses[name]


def cmd_resolve(ws: Workspace, cmd: Command) -> Report:
    m = _module(ws, cmd.target)
    r = minimal_resolution(m, cmd.n_max)
    bt = betti_table(r)
    pd = projective_dimension(r)
    check = verify_resolution(r)
    notes = bt.text_lines()
    notes.append(f"projective dimension: {pd.label()}")
    if r.truncated:
        notes.append(f"truncated at the degree bound {m.bound}")
    machine = bt.machine_lines() + [f"pd {pd.label()}", f"check {check.status}"]
    return Report(f"minimal resolution of {cmd.target}", check, [betti_rich_table(bt)], notes, machine)


def _profile(m: Module, cmd: Command) -> DeltaProfile:
    text = cmd.delta or "koszul"
    if text.strip().lower() == "infer":
        # the criteria at level n read δ(n+1)
        n_max = get_settings().N_MAX if cmd.n_max is None else cmd.n_max
        p = infer_delta(minimal_resolution(m, n_max + 1))
        if p is None:
            raise UsageError("no profile can be inferred: some Betti level has generators in several degrees")
        return p
    return DeltaProfile.parse(text)


def cmd_koszul(ws: Workspace, cmd: Command) -> Report:
    m = _module(ws, cmd.target)
    p = _profile(m, cmd)
    if m.graded:
        cert = certify_delta_koszul(m, p, cmd.n_max, module_id=cmd.target)
    else:
        cert = check_criteria(m, p, cmd.n_max, module_id=cmd.target)
    vals = p.values(cert.n_max + 1)
    notes = ["δ: " + " ".join("?" if v is None else str(v) for v in vals)]
    return Report(f"{p.label()} certificate for {cmd.target}", cert.verdict, [certificate_table(cert)], notes, cert.machine_lines())


def cmd_mhl(ws: Workspace, cmd: Command) -> Report:
    s = _ses(ws, cmd.target)
    vs = ws.algebra.quiver.vertices
    rc = radical_condition(s)
    d = build_minimal_horseshoe(s, cmd.n_max)
    rep = lemma33_conditions(s, cmd.n_max)
    notes = [rc.describe(vs)] + d.text_lines()
    machine = [f"radical {'holds' if rc.holds else 'fails'}" + "".join(f" {k}={v}" for k, v in rc.witness().items())]
    machine += d.machine_lines() + rep.lines()
    return Report(
        f"minimal horseshoe for {cmd.target}",
        d.verdict(),
        [diagram_table(d), lines_table("equivalent conditions", rep.lines())],
        notes,
        machine,
    )


def cmd_horseshoe(ws: Workspace, cmd: Command) -> Report:
    s = _ses(ws, cmd.target)
    d = classic_horseshoe(s, cmd.n_max) if cmd.classic else build_minimal_horseshoe(s, cmd.n_max)
    kind = "classic" if cmd.classic else "minimal"
    return Report(f"{kind} horseshoe for {cmd.target}", d.verdict(), [diagram_table(d)], d.text_lines(), d.machine_lines())


def cmd_algebra(ws: Workspace, cmd: Command) -> Report:
    t = ws.algebra
    layers = t.layer_dims()
    notes = [
        f"mode: {t.mode} ({'D' if t.graded else 'N'}={t.bound})",
        f"field: {t.field.name}",
        "dimensions by " + ("degree" if t.graded else "path length") + ": " + " ".join(map(str, layers)),
        "radical powers dim J^s: " + " ".join(map(str, t.radical_dims())),
    ]
    machine = [f"dim {s} {d}" for s, d in enumerate(layers)]
    machine += [f"radical {s} {d}" for s, d in enumerate(t.radical_dims())]
    verdict = Verdict.certified()
    tables = []
    if t.graded:
        sg = t.validate_standard_graded()
        notes.append(f"standard graded: {sg.label()}")
        machine.append(f"standard_graded {sg.status}")
    else:
        notes.append(f"nilpotency index: {t.nilpotency_index}")
        machine.append(f"nilpotency {t.nilpotency_index}")
    if cmd.delta:
        cert = certify_algebra(t, DeltaProfile.parse(cmd.delta), cmd.n_max)
        tables.append(certificate_table(cert))
        machine += cert.machine_lines()
        verdict = cert.verdict
    return Report("algebra", verdict, tables, notes, machine)


def cmd_dump(ws: Workspace, cmd: Command) -> Report:
    text = dump_workspace(ws)
    return Report("dump", Verdict.certified(), machine=text.splitlines(), raw=text)


def cmd_audit(ws: Optional[Workspace], cmd: Command) -> Report:
    field_ = GenParams.field if cmd.field is None else Field.parse(cmd.field).name
    p = GenParams(seed=cmd.seed, mode=cmd.mode, field=field_)
    profile = DeltaProfile.parse(cmd.delta) if cmd.delta else None
    rep = run_audit(cmd.target, cmd.trials, p, n_max=cmd.n_max, workers=cmd.workers, profile=profile)
    tables = [lines_table(f"audit {rep.suite}", rep.lines())]
    return Report(f"audit {rep.suite} from seed {cmd.seed}", rep.verdict, tables, [], rep.machine_lines())


def cmd_replay(ws: Optional[Workspace], cmd: Command) -> Report:
    r = replay(cmd.target)
    machine = [
        f"replay suite={r.suite} seed={r.seed}",
        f"recorded {r.recorded or '-'}",
        f"recomputed {r.recomputed}",
        f"reproduced {str(r.reproduced).lower()}",
    ]
    return Report(f"replay of {cmd.target}", r.result.verdict, [], r.lines(), machine)


COMMANDS: Dict[str, Callable[[Workspace, Command], Report]] = {
    "resolve": cmd_resolve,
    "koszul": cmd_koszul,
    "mhl": cmd_mhl,
    "horseshoe": cmd_horseshoe,
    "algebra": cmd_algebra,
    "dump": cmd_dump,
    "audit": cmd_audit,
    "replay": cmd_replay,
}

# commands that read no input file
STANDALONE = ("audit", "replay")


def run(ws: Optional[Workspace], cmd: Command) -> Tuple[int, Report]:
    """Execute one command; the exit code depends on the verdict only."""
    handler = COMMANDS.get(cmd.name)
    if handler is None:
        raise UsageError(f"unknown command {cmd.name!r}")
    if ws is None and cmd.name not in STANDALONE:
        raise UsageError(f"{cmd.name} needs an input file")
    log.debug("running %s on %s (n_max=%s)", cmd.name, cmd.target, cmd.n_max or get_settings().N_MAX)
    report = handler(ws, cmd)
    return exit_code(report.verdict), report
