from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Tuple

from deltakoszul.algebra import AlgebraTable
from deltakoszul.common.errors import ModeMismatch, ProfileExhausted
from deltakoszul.common.types import Key, Verdict
from deltakoszul.exactla import Subspace, intersect
from deltakoszul.koszul.profile import DeltaProfile, delta_eval
from deltakoszul.module import Module, radical, radical_multiple, semisimple_top
from deltakoszul.resolution import BettiRow, Resolution, minimal_resolution

log = logging.getLogger(__name__)

LevelStatus = Literal["holds", "fails", "undetermined"]


@dataclass(frozen=True)
class LevelVerdict:
    n: int
    status: LevelStatus
    witness: Dict[str, Any] = field(default_factory=dict)

    def line(self) -> str:
        extra = " ".join(f"{k}={v}" for k, v in sorted(self.witness.items()))
        return f"level {self.n} {self.status}" + (f" {extra}" if extra else "")


@dataclass(frozen=True, eq=False)
class KoszulCertificate:
    module_id: str
    profile: DeltaProfile
    method: Literal["betti", "criteria"]
    n_max: int
    levels: Tuple[LevelVerdict, ...]
    verdict: Verdict
    betti: Tuple[BettiRow, ...] = ()
    companion: Optional["KoszulCertificate"] = None

    def first(self, status: LevelStatus) -> Optional[int]:
        return next((lv.n for lv in self.levels if lv.status == status), None)

    def machine_lines(self) -> List[str]:
        vals = self.profile.values(self.n_max + 1)
        out = [f"profile {self.profile.label()} " + " ".join("?" if v is None else str(v) for v in vals)]
        out += [lv.line() for lv in self.levels]
        out.append(f"verdict {self.verdict.label()}")
        return out


def _overall(levels: List[LevelVerdict], terminated: bool, n_max: int, bound: Optional[int]) -> Verdict:
    for lv in levels:
        if lv.status == "fails":
            return Verdict.fails(level=lv.n, **lv.witness)
    if any(lv.status == "undetermined" for lv in levels):
        first = next(lv.n for lv in levels if lv.status == "undetermined")
        return Verdict.undetermined(bound, level=first)
    if terminated:
        return Verdict.certified()
    return Verdict.certified_up_to(n_max)


def betti_levels(r: Resolution, p: DeltaProfile, n_max: int) -> List[LevelVerdict]:
    """Level n holds when every generator of P_n sits in degree δ(n)."""
    levels: List[LevelVerdict] = []
    for n in range(n_max + 1):
        if n < len(r.betti):
            try:
                want = delta_eval(p, n)
            except ProfileExhausted:
                levels.append(LevelVerdict(n, "undetermined", {"reason": "profile exhausted"}))
                continue
            degs = sorted(d for _, d in r.betti[n])
            if degs and all(d == want for d in degs):
                if r.truncated and n == len(r.betti) - 1:
                    # generators above the bound are invisible in the last row
                    levels.append(LevelVerdict(n, "undetermined", {"reason": "truncated"}))
                    continue
                levels.append(LevelVerdict(n, "holds"))
            else:
                levels.append(LevelVerdict(n, "fails", {"expected": want, "degrees": ",".join(map(str, degs))}))
        elif r.terminated:
            levels.append(LevelVerdict(n, "holds", {"vacuous": "terminated"}))
        else:
            levels.append(LevelVerdict(n, "undetermined", {"reason": "truncated"}))
    return levels


def certify_delta_koszul(
    m: Module,
    p: DeltaProfile,
    n_max: Optional[int] = None,
    module_id: str = "",
    resolution: Optional[Resolution] = None,
) -> KoszulCertificate:
    if not m.graded:
        raise ModeMismatch("the Betti test needs a graded module; use check_criteria")
    r = resolution or minimal_resolution(m, n_max)
    n_max = r.n_max
    levels = betti_levels(r, p, n_max)
    return KoszulCertificate(
        module_id=module_id,
        profile=p,
        method="betti",
        n_max=n_max,
        levels=tuple(levels),
        verdict=_overall(levels, r.terminated, n_max, m.bound),
        betti=r.betti,
    )


def _first_outside(f, sub: Subspace, big: Subspace) -> Optional[str]:
    for v in sub.vectors():
        if not big.contains(v):
            return f.format_vector(v)
    return None


def criteria_level(r: Resolution, n: int, p: DeltaProfile) -> LevelVerdict:
    """ker d_n ⊆ J^e P_n and J ker d_n = ker d_n ∩ J^{e+1} P_n, with e = δ(n+1) - δ(n)."""
    if n >= len(r.steps):
        if r.terminated:
            return LevelVerdict(n, "holds", {"vacuous": "terminated"})
        return LevelVerdict(n, "undetermined", {"reason": "truncated"})
    try:
        e = delta_eval(p, n + 1) - delta_eval(p, n)
        nxt = delta_eval(p, n + 1)
    except ProfileExhausted:
        return LevelVerdict(n, "undetermined", {"reason": "profile exhausted"})
    step = r.steps[n]
    pn = step.projective
    f = pn.field
    if pn.graded and (pn.bound is None or nxt + 1 > pn.bound):
        return LevelVerdict(n, "undetermined", {"reason": f"needs degree {nxt + 1}"})
    ker, incl = step.kernel, step.kernel_incl
    je = radical_multiple(e, pn)
    je1 = radical_multiple(e + 1, pn)
    jker = radical(ker)
    for k in pn.keys():
        sub = Subspace.span(f, pn.dim(k), incl.block(k)) if ker.dim(k) else Subspace.zero(f, pn.dim(k))
        bad = _first_outside(f, sub, je[k])
        if bad is not None:
            return LevelVerdict(n, "fails", {"condition": "containment", "key": _key(k), "vector": bad})
        if ker.dim(k):
            lhs = jker[k].image(incl.matrix(k))
        else:
            lhs = Subspace.zero(f, pn.dim(k))
        rhs = intersect(sub, je1[k])
        if lhs != rhs:
            bad = _first_outside(f, rhs, lhs) or _first_outside(f, lhs, rhs)
            return LevelVerdict(n, "fails", {"condition": "radical", "key": _key(k), "vector": bad})
    return LevelVerdict(n, "holds")


def _key(k: Key) -> str:
    return f"{k[0]}:{k[1]}"


def check_criteria(
    m: Module,
    p: DeltaProfile,
    n_max: Optional[int] = None,
    module_id: str = "",
    resolution: Optional[Resolution] = None,
) -> KoszulCertificate:
    r = resolution or minimal_resolution(m, n_max)
    n_max = r.n_max
    levels = [criteria_level(r, n, p) for n in range(n_max + 1)]
    return KoszulCertificate(
        module_id=module_id,
        profile=p,
        method="criteria",
        n_max=n_max,
        levels=tuple(levels),
        verdict=_overall(levels, r.terminated, n_max, m.bound),
        betti=r.betti,
    )


def generation_check(m: Module, p: DeltaProfile, r: Resolution) -> LevelVerdict:
    """Whether m is generated in degree δ(0); level -1 on the criteria side."""
    if not r.betti:
        return LevelVerdict(-1, "holds", {"vacuous": "zero module"})
    want = delta_eval(p, 0)
    degs = sorted(d for _, d in r.betti[0])
    if all(d == want for d in degs):
        return LevelVerdict(-1, "holds")
    return LevelVerdict(-1, "fails", {"expected": want, "degrees": ",".join(map(str, degs))})


def certify_algebra(t: AlgebraTable, p: DeltaProfile, n_max: Optional[int] = None) -> KoszulCertificate:
    """Certify A_0 (graded) or R/J (finite-dimensional) against the profile."""
    s = semisimple_top(t)
    r = minimal_resolution(s, n_max)
    if t.graded:
        return certify_delta_koszul(s, p, module_id="A_0", resolution=r)
    crit = check_criteria(s, p, module_id="R/J", resolution=r)
    levels = betti_levels(r, p, r.n_max)
    filtered = KoszulCertificate(
        module_id="R/J",
        profile=p,
        method="betti",
        n_max=r.n_max,
        levels=tuple(levels),
        verdict=_overall(levels, r.terminated, r.n_max, None),
        betti=r.betti,
    )
    if crit.verdict.status != filtered.verdict.status:
        log.warning("criteria and filtered Betti verdicts differ: %s vs %s", crit.verdict.label(), filtered.verdict.label())
    return KoszulCertificate(
        module_id=crit.module_id,
        profile=p,
        method="criteria",
        n_max=crit.n_max,
        levels=crit.levels,
        verdict=crit.verdict,
        betti=r.betti,
        companion=filtered,
    )


@dataclass(frozen=True)
class CrossCheck:
    """Betti test against generation-in-δ(0) plus the criteria, level by level."""

    betti: Tuple[LevelVerdict, ...]
    criteria: Tuple[LevelVerdict, ...]  # index j: generation check for j = 0, criteria level j-1 after
    verdict: Verdict


def cross_check_betti_criteria(
    m: Module,
    p: DeltaProfile,
    n_max: Optional[int] = None,
    resolution: Optional[Resolution] = None,
) -> CrossCheck:
    """Both tests must first leave "holds" at the same Betti level."""
    r = resolution or minimal_resolution(m, n_max)
    n = r.n_max
    betti = betti_levels(r, p, n)
    try:
        gen = generation_check(m, p, r)
    except ProfileExhausted:
        gen = LevelVerdict(-1, "undetermined", {"reason": "profile exhausted"})
    crit = [gen] + [criteria_level(r, j, p) for j in range(n)]
    verdict = Verdict.certified()
    for j, (a, b) in enumerate(zip(betti, crit)):
        if a.status == "undetermined" or b.status == "undetermined":
            verdict = Verdict.certified_up_to(j - 1) if j else Verdict.undetermined(m.bound, level=0)
            break
        if a.status != b.status:
            verdict = Verdict.fails(level=j, betti=a.status, criteria=b.status)
            break
        if a.status == "fails":
            break
    return CrossCheck(betti=tuple(betti), criteria=tuple(crit), verdict=verdict)
