"""Horseshoe diagrams: a resolution of M assembled from resolutions of K and N.

At each level the covers P → K and Q → N are combined into L = P ⊕ Q → M. The generators of P
go through i; those of Q are lifted through p. The kernels then form the next short exact
sequence, and the construction repeats. ``build_minimal_horseshoe`` only proceeds while the
radical condition JK = K ∩ JM holds (exactly when L is a projective cover of M);
``classic_horseshoe`` always proceeds and reports where L fails to be minimal.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from deltakoszul.common.errors import ConditionFails, InvalidMorphism, TruncationExceeded
from deltakoszul.common.types import Verdict
from deltakoszul.config import get_settings
from deltakoszul.exactla import Subspace, solve
from deltakoszul.horseshoe.conditions import RadicalCondition, radical_condition
from deltakoszul.horseshoe.ses import ShortExactSequence, make_ses
from deltakoszul.module import (
    Cover,
    Morphism,
    ProjectiveShape,
    kernel,
    map_from_projective,
    projective,
    projective_cover,
    radical,
    restrict,
    summand_inclusion,
    summand_projection,
    top,
)
from deltakoszul.resolution import BettiRow, Resolution, ResolutionStep

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HorseshoeStep:
    """One level of the diagram: covers of K, M, N and the induced kernel sequence."""

    ses: ShortExactSequence
    cover_k: Cover
    cover_n: Cover
    middle_epi: Morphism  # L → M
    iota: Morphism  # P → L
    pi: Morphism  # L → Q
    commutes: bool
    defect: Optional[Dict[str, Any]]  # None when ker(L → M) ⊆ J·L
    kernel_ses: ShortExactSequence
    kernel_incl: Morphism  # Ω(M) → L


@dataclass(frozen=True)
class HorseshoeLevel:
    n: int
    p_shape: ProjectiveShape
    l_shape: ProjectiveShape
    q_shape: ProjectiveShape
    radical: Optional[RadicalCondition]
    commutes: bool = True
    defect: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.radical is None or self.radical.holds


@dataclass(frozen=True, eq=False)
class HorseshoeDiagram:
    ses: ShortExactSequence
    levels: Tuple[HorseshoeLevel, ...]
    middle: Resolution
    n_max: int
    classic: bool = False
    failure: Optional[Tuple[int, Dict[str, Any]]] = None
    truncated: bool = False
    terminated: bool = False
    syzygy_sequences: Tuple[ShortExactSequence, ...] = field(default=())

    @property
    def succeeded(self) -> bool:
        """The minimal horseshoe exists through ``n_max`` (or until everything vanished)."""
        return self.failure is None and not self.truncated

    @property
    def levels_built(self) -> int:
        return sum(1 for lv in self.levels if lv.ok)

    @property
    def defects(self) -> List[HorseshoeLevel]:
        return [lv for lv in self.levels if lv.defect is not None]

    def verdict(self) -> Verdict:
        if self.failure is not None:
            return Verdict.fails(level=self.failure[0], **self.failure[1])
        if self.classic and self.defects:
            lv = self.defects[0]
            return Verdict.fails(level=lv.n, **lv.defect)
        if self.truncated:
            return Verdict.undetermined(self.ses.M.bound, level=len(self.levels))
        if self.terminated:
            return Verdict.certified()
        return Verdict.certified_up_to(self.n_max)

    def text_lines(self) -> List[str]:
        vs = self.ses.algebra.quiver.vertices
        out = []
        for lv in self.levels:
            out.append(
                f"level {lv.n}: P={lv.p_shape.label(vs)} L={lv.l_shape.label(vs)} Q={lv.q_shape.label(vs)}"
                + ("" if lv.commutes else " (squares do not commute)")
            )
            if lv.radical is not None and not lv.radical.holds:
                out.append("  " + lv.radical.describe(vs))
            if lv.defect is not None:
                out.append(f"  minimality defect: {_fmt(lv.defect)}")
        if self.truncated:
            out.append(f"truncated at the degree bound after {len(self.levels)} level(s)")
        elif self.terminated:
            out.append("all three resolutions terminated")
        return out

    def machine_lines(self) -> List[str]:
        out = []
        for lv in self.levels:
            if self.classic:
                status = "ok" if lv.defect is None else "fail"
                w = lv.defect or {}
            else:
                status = "ok" if lv.ok else "fail"
                w = {} if lv.ok else lv.radical.witness()
            out.append(f"mhl {lv.n} {status}" + (f" {_fmt(w)}" if w else ""))
        if self.truncated:
            out.append(f"mhl {len(self.levels)} undetermined bound={self.ses.M.bound}")
        return out


def _fmt(w: Dict[str, Any]) -> str:
    return " ".join(f"{k}={v}" for k, v in w.items())


def horseshoe_step(s: ShortExactSequence) -> HorseshoeStep:
    """Covers of K and N, the middle map from their sum, and the sequence of kernels."""
    ck = projective_cover(s.K)
    cn = projective_cover(s.N)
    t = s.algebra
    f = s.M.field
    p_mod, q_mod = ck.projective, cn.projective
    shape = p_mod.shape + q_mod.shape
    l_mod = projective(t, shape, bound=s.M.bound if s.graded else None)

    images: List[np.ndarray] = []
    for g in ck.top.generators:
        images.append(s.i.apply(g.key, g.vector))
    for g in cn.top.generators:
        lift = solve(s.p.matrix(g.key), g.vector)
        if lift is None:
            raise InvalidMorphism("p is not onto a generator of N", key=g.key)
        images.append(lift)
    epi = map_from_projective(l_mod, s.M, images)
    iota = summand_inclusion(p_mod, l_mod, 0)
    pi = summand_projection(l_mod, q_mod, len(p_mod.shape))

    commutes = _same_map(iota.then(epi), ck.epi.then(s.i)) and _same_map(epi.then(s.p), pi.then(cn.epi))

    om, incl_m = kernel(epi)
    jl = radical(l_mod)
    defect = None
    for k in om.keys():
        sub = Subspace.span(f, l_mod.dim(k), incl_m.block(k))
        bad = next((v for v in sub.vectors() if not jl[k].contains(v)), None)
        if bad is not None:
            defect = {"degree": k[0], "vertex": t.quiver.vertices[k[1]], "generator": f.format_vector(bad)}
            break

    ses_k = make_ses(
        ck.kernel,
        om,
        cn.kernel,
        restrict(iota, ck.kernel_incl, incl_m),
        restrict(pi, incl_m, cn.kernel_incl),
    )
    return HorseshoeStep(
        ses=s,
        cover_k=ck,
        cover_n=cn,
        middle_epi=epi,
        iota=iota,
        pi=pi,
        commutes=commutes,
        defect=defect,
        kernel_ses=ses_k,
        kernel_incl=incl_m,
    )


def _same_map(a: Morphism, b: Morphism) -> bool:
    keys = set(a.domain.keys()) | set(b.domain.keys())
    return all(np.array_equal(a.block(k), b.block(k)) for k in keys)


def syzygy_ses(s: ShortExactSequence) -> ShortExactSequence:
    """0 → Ω(K) → Ω(M) → Ω(N) → 0 built from minimal covers; needs JK = K ∩ JM."""
    rc = radical_condition(s)
    if not rc.holds:
        raise ConditionFails("JK differs from K ∩ JM", key=rc.key, witness=rc.witness())
    return horseshoe_step(s).kernel_ses


def _middle_step(n: int, st: HorseshoeStep, prev: Optional[ResolutionStep]) -> ResolutionStep:
    d = st.middle_epi if prev is None else st.middle_epi.then(prev.kernel_incl)
    return ResolutionStep(
        n=n,
        projective=st.middle_epi.domain,
        cover=st.middle_epi,
        differential=d,
        kernel=st.kernel_ses.M,
        kernel_incl=st.kernel_incl,
    )


def _betti_of(shape: ProjectiveShape) -> BettiRow:
    return tuple(sorted(shape.summands))


def _run(s: ShortExactSequence, n_max: Optional[int], classic: bool) -> HorseshoeDiagram:
    n_max = get_settings().N_MAX if n_max is None else n_max
    levels: List[HorseshoeLevel] = []
    steps: List[ResolutionStep] = []
    betti: List[BettiRow] = []
    sequences: List[ShortExactSequence] = []
    failure = None
    truncated = terminated = False
    cur = s
    for n in range(n_max + 1):
        if cur.M.is_zero():
            terminated = True
            break
        sequences.append(cur)
        rc = None if classic else radical_condition(cur)
        if rc is not None and not rc.holds:
            levels.append(
                HorseshoeLevel(
                    n=n,
                    p_shape=top(cur.K).shape,
                    l_shape=top(cur.M).shape,
                    q_shape=top(cur.N).shape,
                    radical=rc,
                )
            )
            failure = (n, rc.witness())
            log.info("minimal horseshoe fails at level %d: %s", n, rc.witness())
            break
        try:
            st = horseshoe_step(cur)
        except TruncationExceeded as exc:
            truncated = True
            log.info("horseshoe truncated at level %d: %s", n, exc)
            break
        lv = HorseshoeLevel(
            n=n,
            p_shape=st.cover_k.projective.shape,
            l_shape=st.middle_epi.domain.shape,
            q_shape=st.cover_n.projective.shape,
            radical=rc,
            commutes=st.commutes,
            defect=st.defect,
        )
        levels.append(lv)
        steps.append(_middle_step(n, st, steps[-1] if steps else None))
        betti.append(_betti_of(lv.l_shape))
        cur = st.kernel_ses
    else:
        terminated = cur.M.is_zero()
    middle = Resolution(
        target=s.M,
        steps=tuple(steps),
        betti=tuple(betti),
        terminated=terminated and failure is None,
        truncated=truncated,
        n_max=n_max,
        validity=s.M.bound if s.graded else None,
        minimal=not classic or not any(lv.defect for lv in levels),
    )
    return HorseshoeDiagram(
        ses=s,
        levels=tuple(levels),
        middle=middle,
        n_max=n_max,
        classic=classic,
        failure=failure,
        truncated=truncated,
        terminated=terminated and failure is None,
        syzygy_sequences=tuple(sequences),
    )


def build_minimal_horseshoe(s: ShortExactSequence, n_max: Optional[int] = None) -> HorseshoeDiagram:
    return _run(s, n_max, classic=False)


def classic_horseshoe(s: ShortExactSequence, n_max: Optional[int] = None) -> HorseshoeDiagram:
    return _run(s, n_max, classic=True)
