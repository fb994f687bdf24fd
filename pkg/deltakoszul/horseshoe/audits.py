from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

from deltakoszul.common.errors import MHLNotEstablished, ModeMismatch, PreconditionNotCertified
from deltakoszul.common.types import Verdict
from deltakoszul.config import get_settings
from deltakoszul.horseshoe.conditions import (
    radical_condition,
    radical_row_exact,
    snake_dims_consistent,
    top_map_injective,
    top_row_exact,
)
from deltakoszul.horseshoe.diagram import HorseshoeDiagram, build_minimal_horseshoe
from deltakoszul.horseshoe.ses import ShortExactSequence
from deltakoszul.koszul import DeltaProfile, KoszulCertificate, check_criteria
from deltakoszul.resolution import BettiRow, ProjectiveDimension, Resolution, minimal_resolution, projective_dimension

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AuditResult:
    name: str
    verdict: Verdict
    facts: Dict[str, Any] = field(default_factory=dict)

    def lines(self) -> List[str]:
        out = [f"{self.name}: {self.verdict.label()}"]
        out += [f"  {k} = {v}" for k, v in self.facts.items()]
        if self.verdict.witness:
            out.append("  witness: " + " ".join(f"{k}={v}" for k, v in self.verdict.witness.items()))
        return out


CONDITION_NAMES = ("radical", "radical_row_exact", "top_row_exact", "top_mono", "mhl")


@dataclass(frozen=True)
class Lemma33Report:
    conditions: Tuple[Optional[bool], ...]
    gated: bool
    agree: bool
    snake: bool

    def verdict(self) -> Verdict:
        if not self.agree:
            return Verdict.fails(**dict(zip(CONDITION_NAMES, self.conditions)))
        return Verdict.certified()

    def lines(self) -> List[str]:
        out = []
        for name, c in zip(CONDITION_NAMES, self.conditions):
            out.append(f"cond {name} {'undetermined' if c is None else str(c).lower()}")
        out.append(f"cond gated {str(self.gated).lower()}")
        out.append(f"cond agree {str(self.agree).lower()}")
        return out


def _certified(certs: List[KoszulCertificate], upto: Optional[int] = None) -> bool:
    """Every level below ``upto`` (all levels when None) holds in every certificate."""
    for c in certs:
        for lv in c.levels:
            if upto is not None and lv.n >= upto:
                continue
            if lv.status != "holds":
                return False
    return True


def _certificates(s: ShortExactSequence, profile: DeltaProfile, n_max: int) -> List[KoszulCertificate]:
    return [check_criteria(m, profile, n_max, module_id=name) for name, m in (("K", s.K), ("M", s.M), ("N", s.N))]


def lemma33_conditions(
    s: ShortExactSequence,
    n_max: Optional[int] = None,
    profile: Optional[DeltaProfile] = None,
) -> Lemma33Report:
    """The five equivalent forms of JK = K ∩ JM; the horseshoe form is compared only for certified inputs."""
    n_max = get_settings().N_MAX if n_max is None else n_max
    c1 = radical_condition(s).holds
    c2 = radical_row_exact(s)
    c3 = top_row_exact(s)
    c4 = top_map_injective(s)
    d = build_minimal_horseshoe(s, n_max)
    c5 = None if d.truncated else d.succeeded
    gated = profile is not None and _certified(_certificates(s, profile, n_max))
    agree = c1 == c2 == c3 == c4
    if c5 is True and not c1:
        agree = False
    if gated and c5 is not None and c5 != c1:
        agree = False
    snake = not c2 or snake_dims_consistent(s)
    if not agree:
        log.warning("equivalent conditions disagree: %s", dict(zip(CONDITION_NAMES, (c1, c2, c3, c4, c5))))
    return Lemma33Report(conditions=(c1, c2, c3, c4, c5), gated=gated, agree=agree and snake, snake=snake)


def audit_theorem_a(s: ShortExactSequence, profile: DeltaProfile, n_max: Optional[int] = None) -> AuditResult:
    """For quasi-δ-Koszul K, M, N: the radical condition holds iff the minimal horseshoe exists."""
    n_max = get_settings().N_MAX if n_max is None else n_max
    certs = _certificates(s, profile, n_max)
    if not _certified(certs):
        bad = next(c for c in certs if not _certified([c]))
        raise PreconditionNotCertified(
            f"{bad.module_id} is not certified for {profile.label()}: {bad.verdict.label()}",
            witness=bad.module_id,
        )
    lhs = radical_condition(s).holds
    d = build_minimal_horseshoe(s, n_max)
    name = "radical condition vs minimal horseshoe"
    facts = {"radical_condition": lhs, "mhl": "undetermined" if d.truncated else d.succeeded}
    if d.truncated:
        return AuditResult(name, Verdict.undetermined(s.M.bound, level=len(d.levels)), facts)
    if lhs != d.succeeded:
        return AuditResult(name, Verdict.fails(radical_condition=lhs, mhl=d.succeeded), facts)
    return AuditResult(name, Verdict.certified_up_to(n_max), facts)


def _require_mhl(d: HorseshoeDiagram, allow_truncation: bool = True) -> None:
    if d.failure is not None:
        raise MHLNotEstablished(f"minimal horseshoe fails at level {d.failure[0]}", level=d.failure[0])
    if d.truncated and not allow_truncation:
        raise MHLNotEstablished(f"minimal horseshoe truncated after {len(d.levels)} level(s)", level=len(d.levels))


def _projective_flags(pd: ProjectiveDimension) -> set:
    lo, hi = pd.interval()
    if (lo, hi) == (0, 0):
        return {True}
    if lo >= 1:
        return {False}
    return {True, False}


def _interval_max(a: Tuple[int, Optional[int]], b: Tuple[int, Optional[int]]) -> Tuple[int, Optional[int]]:
    hi = None if a[1] is None or b[1] is None else max(a[1], b[1])
    return (max(a[0], b[0]), hi)


def _meets(a: Tuple[int, Optional[int]], b: Tuple[int, Optional[int]]) -> bool:
    lo = max(a[0], b[0])
    his = [h for h in (a[1], b[1]) if h is not None]
    return not his or lo <= min(his)


def audit_theorem_c(s: ShortExactSequence, n_max: Optional[int] = None) -> AuditResult:
    """Under the minimal horseshoe: M projective iff K and N are, and pd M = max(pd K, pd N)."""
    n_max = get_settings().N_MAX if n_max is None else n_max
    d = build_minimal_horseshoe(s, n_max)
    _require_mhl(d)
    pds = {name: projective_dimension(minimal_resolution(m, n_max)) for name, m in (("K", s.K), ("M", s.M), ("N", s.N))}
    facts = {f"pd({k})": v.label() for k, v in pds.items()}
    fk, fm, fn = (_projective_flags(pds[x]) for x in "KMN")
    if not any(m == (k and n) for k, m, n in product(fk, fm, fn)):
        return AuditResult("projective dimension", Verdict.fails(part=1, **facts), facts)
    want = _interval_max(pds["K"].interval(), pds["N"].interval())
    if not _meets(pds["M"].interval(), want):
        return AuditResult("projective dimension", Verdict.fails(part=2, **facts), facts)
    if all(p.kind == "finite" for p in pds.values()):
        return AuditResult("projective dimension", Verdict.certified(), facts)
    return AuditResult("projective dimension", Verdict.certified_up_to(n_max), facts)


def audit_theorem_d(s: ShortExactSequence, n_max: Optional[int] = None) -> AuditResult:
    """Quasi-Koszulity passes from M to K; and to N when J² behaves like J on every syzygy sequence."""
    if s.graded:
        raise ModeMismatch("the quasi-Koszul audit runs on finite-dimensional modules")
    n_max = get_settings().N_MAX if n_max is None else n_max
    d = build_minimal_horseshoe(s, n_max)
    _require_mhl(d, allow_truncation=False)
    koszul = DeltaProfile.koszul()
    ck, cm, cn = _certificates(s, koszul, n_max)
    ok_k, ok_m, ok_n = (_certified([c], upto=n_max) for c in (ck, cm, cn))
    hyp = all(radical_condition(seq, power=2).holds for seq in d.syzygy_sequences)
    facts: Dict[str, Any] = {"K": ok_k, "M": ok_m, "N": ok_n, "j2_hypothesis": hyp}
    if ok_m and not ok_k:
        return AuditResult("quasi-Koszul transfer", Verdict.fails(part=1, **facts), facts)
    if hyp and ok_k and ok_m:
        if not ok_n:
            return AuditResult("quasi-Koszul transfer", Verdict.fails(part=2, **facts), facts)
        facts["part2"] = "checked"
    else:
        facts["part2"] = "not applicable"
    return AuditResult("quasi-Koszul transfer", Verdict.certified_up_to(n_max - 1), facts)


def audit_extension_closure(s: ShortExactSequence, n_max: Optional[int] = None) -> AuditResult:
    """JK = K ∩ JM with K and N quasi-Koszul forces M quasi-Koszul."""
    n_max = get_settings().N_MAX if n_max is None else n_max
    koszul = DeltaProfile.koszul()
    rc = radical_condition(s).holds
    ck, cm, cn = _certificates(s, koszul, n_max)
    ok_k, ok_m, ok_n = (_certified([c], upto=n_max) for c in (ck, cm, cn))
    facts = {"radical_condition": rc, "K": ok_k, "M": ok_m, "N": ok_n}
    if not (rc and ok_k and ok_n):
        return AuditResult("extension closure", Verdict.undetermined(level=0, reason="hypotheses not met"), facts)
    if not ok_m:
        return AuditResult("extension closure", Verdict.fails(**facts), facts)
    return AuditResult("extension closure", Verdict.certified_up_to(n_max - 1), facts)


def _row(r: Resolution, i: int) -> Optional[BettiRow]:
    if i < len(r.betti):
        return r.betti[i]
    return () if r.terminated else None


def _row_key(row: BettiRow, graded: bool) -> Counter:
    return Counter(row) if graded else Counter(v for v, _ in row)


def audit_lemma32(s: ShortExactSequence, n_max: Optional[int] = None) -> AuditResult:
    """The minimal horseshoe exists through level n iff Betti data of M is that of K and N combined."""
    n_max = get_settings().N_MAX if n_max is None else n_max
    d = build_minimal_horseshoe(s, n_max)
    conds = [radical_condition(seq).holds for seq in d.syzygy_sequences]
    mhl_known = n_max + 1 if d.terminated else len(conds)
    mhl_fail = next((i for i, c in enumerate(conds) if not c), None)

    rs = [minimal_resolution(m, n_max) for m in (s.K, s.M, s.N)]
    add_fail, add_known = None, n_max + 1
    for i in range(n_max + 1):
        rk, rm, rn = (_row(r, i) for r in rs)
        if rk is None or rm is None or rn is None:
            add_known = i
            break
        if _row_key(rm, s.graded) != _row_key(rk, s.graded) + _row_key(rn, s.graded):
            add_fail, add_known = i, i + 1
            break

    limit = min(mhl_known, add_known)
    f1 = mhl_fail if mhl_fail is not None and mhl_fail < limit else None
    f2 = add_fail if add_fail is not None and add_fail < limit else None
    facts = {"mhl_fails_at": f1, "betti_split_fails_at": f2, "compared_levels": limit}
    if f1 != f2:
        return AuditResult("betti splitting", Verdict.fails(mhl=f1, betti=f2), facts)
    if f1 is not None or limit == n_max + 1:
        return AuditResult("betti splitting", Verdict.certified_up_to(n_max), facts)
    if limit == 0:
        return AuditResult("betti splitting", Verdict.undetermined(s.M.bound, level=0), facts)
    return AuditResult("betti splitting", Verdict.certified_up_to(limit - 1), facts)
