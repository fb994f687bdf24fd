from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

from deltakoszul.common.errors import InvalidMorphism, TruncationExceeded
from deltakoszul.exactla import Subspace, subspace_leq
from deltakoszul.module.core import Module, Morphism
from deltakoszul.module.projective import map_from_projective, projective
from deltakoszul.module.radical import Top, radical, top
from deltakoszul.module.subquotient import image_subspaces, kernel

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Cover:
    projective: Module
    epi: Morphism
    top: Top
    kernel: Module
    kernel_incl: Morphism


@dataclass(frozen=True, eq=False)
class Syzygy:
    omega: Module
    incl: Morphism  # omega → cover.projective
    cover: Cover


def projective_cover(m: Module) -> Cover:
    tp = top(m)
    if m.graded:
        for g in tp.generators:
            if m.bound is None or g.key[0] + 1 > m.bound:
                raise TruncationExceeded(
                    f"top generator in degree {g.key[0]} at the trusted bound {m.bound}",
                    key=g.key,
                )
    p = projective(m.algebra, tp.shape, bound=m.bound if m.graded else None)
    epi = map_from_projective(p, m, [g.vector for g in tp.generators])
    ker, incl = check_cover(p, epi)
    return Cover(projective=p, epi=epi, top=tp, kernel=ker, kernel_incl=incl)


def check_cover(p: Module, epi: Morphism) -> Tuple[Module, Morphism]:
    """Surjectivity and ker(epi) ⊆ J·P; returns the kernel."""
    img = image_subspaces(epi)
    for k in epi.codomain.keys():
        if not img[k].is_full():
            raise InvalidMorphism("cover is not surjective", key=k)
    ker, incl = kernel(epi)
    jp = radical(p)
    for k in ker.keys():
        sub = Subspace.span(p.field, p.dim(k), incl.block(k))
        if not subspace_leq(sub, jp[k]):
            raise InvalidMorphism("cover kernel is not inside J·P", key=k)
    return ker, incl


def syzygy(m: Module) -> Syzygy:
    c = projective_cover(m)
    log.debug("syzygy: cover %s, omega dims %s", c.projective.shape.summands, c.kernel.dim_vector())
    return Syzygy(omega=c.kernel, incl=c.kernel_incl, cover=c)
