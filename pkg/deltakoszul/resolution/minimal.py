from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple

from deltakoszul.common.errors import TruncationExceeded
from deltakoszul.common.types import Verdict
from deltakoszul.config import get_settings
from deltakoszul.exactla import Subspace, subspace_leq
from deltakoszul.module import (
    Module,
    Morphism,
    Top,
    image_subspaces,
    kernel,
    projective_cover,
    radical,
    top,
)

log = logging.getLogger(__name__)

BettiRow = Tuple[Tuple[int, int], ...]  # sorted (vertex, degree) with repetition


@dataclass(frozen=True, eq=False)
class ResolutionStep:
    n: int
    projective: Module  # P_n
    cover: Morphism  # P_n onto Ω^n (Ω^0 is the target)
    differential: Morphism  # d_n: P_n → P_{n-1}; d_0: P_0 → target
    kernel: Module  # Ω^{n+1}
    kernel_incl: Morphism  # Ω^{n+1} → P_n


@dataclass(frozen=True, eq=False)
class Resolution:
    target: Module
    steps: Tuple[ResolutionStep, ...]
    betti: Tuple[BettiRow, ...]
    terminated: bool
    truncated: bool
    n_max: int
    validity: Optional[int] = None
    minimal: bool = True

    @property
    def hom_bound(self) -> int:
        return len(self.steps) - 1

    def differential(self, n: int) -> Morphism:
        return self.steps[n].differential


def betti_row(tp: Top) -> BettiRow:
    return tuple(sorted((g.key[1], g.weight) for g in tp.generators))


def minimal_resolution(m: Module, n_max: Optional[int] = None) -> Resolution:
    n_max = get_settings().N_MAX if n_max is None else n_max
    steps: List[ResolutionStep] = []
    betti: List[BettiRow] = []
    terminated = truncated = False
    cur = m
    for n in range(n_max + 1):
        if cur.is_zero():
            terminated = True
            break
        try:
            c = projective_cover(cur)
        except TruncationExceeded as exc:
            # the generators are known even though their cover is not
            betti.append(betti_row(top(cur)))
            truncated = True
            log.info("resolution truncated at level %d: %s", n, exc)
            break
        d = c.epi if n == 0 else c.epi.then(steps[-1].kernel_incl)
        steps.append(
            ResolutionStep(
                n=n,
                projective=c.projective,
                cover=c.epi,
                differential=d,
                kernel=c.kernel,
                kernel_incl=c.kernel_incl,
            )
        )
        betti.append(betti_row(c.top))
        cur = c.kernel
    else:
        terminated = cur.is_zero()
    return Resolution(
        target=m,
        steps=tuple(steps),
        betti=tuple(betti),
        terminated=terminated,
        truncated=truncated,
        n_max=n_max,
        validity=m.bound if m.graded else None,
    )


@dataclass(frozen=True)
class ProjectiveDimension:
    kind: Literal["finite", "at_least", "undetermined"]
    value: int

    def interval(self) -> Tuple[int, Optional[int]]:
        """Range of pd values consistent with this verdict; None means unbounded."""
        if self.kind == "finite":
            return (self.value, self.value)
        return (self.value, None)

    def label(self) -> str:
        name = {"finite": "Finite", "at_least": "AtLeast", "undetermined": "Undetermined"}[self.kind]
        return f"{name}({self.value})"


def projective_dimension(r: Resolution) -> ProjectiveDimension:
    if r.terminated:
        return ProjectiveDimension("finite", max(r.hom_bound, 0))
    if r.truncated:
        known = max((n for n, row in enumerate(r.betti) if row), default=0)
        return ProjectiveDimension("undetermined", known)
    return ProjectiveDimension("at_least", r.hom_bound + 1)


def _subspaces_of(incl: Morphism) -> dict:
    f = incl.field
    return {k: Subspace.span(f, incl.codomain.dim(k), incl.block(k)) for k in incl.domain.keys()}


def verify_resolution(r: Resolution) -> Verdict:
    """Exactness of the computed complex and ker d_n ⊆ J·P_n at every step."""
    f = r.target.field
    if not r.steps:
        if r.target.is_zero():
            return Verdict.certified()
        return Verdict.undetermined(r.validity, reason="no step computed")
    d0 = r.steps[0].differential
    img0 = image_subspaces(d0)
    for k in r.target.keys():
        if not img0[k].is_full():
            return Verdict.fails(n=0, key=k, reason="d_0 is not onto the target")
    kernels = []
    for step in r.steps:
        ker, incl = kernel(step.differential)
        kernels.append(_subspaces_of(incl))
    for n, step in enumerate(r.steps):
        p = step.projective
        jp = radical(p)
        for k, sub in sorted(kernels[n].items()):
            if not subspace_leq(sub, jp[k]):
                bad = next(v for v in sub.vectors() if not jp[k].contains(v))
                return Verdict.fails(n=n, key=k, vector=f.format_vector(bad), reason="ker d_n is not inside J·P_n")
        if n + 1 < len(r.steps):
            img = image_subspaces(r.steps[n + 1].differential)
            for k in p.keys():
                want = kernels[n].get(k, Subspace.zero(f, p.dim(k)))
                if img[k] != want:
                    return Verdict.fails(n=n + 1, key=k, reason="image d_{n+1} differs from ker d_n")
    last = len(r.steps) - 1
    if r.terminated and any(not s.is_zero() for s in kernels[last].values()):
        return Verdict.fails(n=last, reason="resolution claims termination with a nonzero kernel")
    if r.target.graded:
        return Verdict.certified_up_to(r.validity if r.validity is not None else r.target.algebra.bound)
    return Verdict.certified()
