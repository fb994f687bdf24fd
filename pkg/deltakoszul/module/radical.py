from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from deltakoszul.common.types import Key
from deltakoszul.exactla import Subspace
from deltakoszul.module.core import Module, ProjectiveShape


def radical_multiple(s: int, m: Module) -> Dict[Key, Subspace]:
    """J^s m at every nonzero key of m."""
    if s < 0:
        raise ValueError("radical powers need s >= 0")
    f = m.field
    cur = {k: Subspace.full(f, m.dim(k)) for k in m.keys()}
    for _ in range(s):
        parts: Dict[Key, List[np.ndarray]] = {k: [] for k in cur}
        for k, sub in cur.items():
            if sub.is_zero():
                continue
            for a, nk in m.outgoing(k):
                if nk in parts:
                    parts[nk].append(f.matmul(sub.rows, m.arr(a, k)))
        nxt = {}
        for k in cur:
            rows = [p for p in parts[k] if p.shape[0]]
            nxt[k] = Subspace.span(f, m.dim(k), np.vstack(rows)) if rows else Subspace.zero(f, m.dim(k))
        cur = nxt
        if all(sp.is_zero() for sp in cur.values()):
            break
    return cur


def radical(m: Module) -> Dict[Key, Subspace]:
    return radical_multiple(1, m)


@dataclass(frozen=True, eq=False)
class Generator:
    key: Key
    vector: np.ndarray
    weight: int


@dataclass(frozen=True, eq=False)
class Top:
    generators: Tuple[Generator, ...]
    dims: Dict[Key, int]

    @property
    def shape(self) -> ProjectiveShape:
        return ProjectiveShape(tuple((g.key[1], g.weight) for g in self.generators))


def top(m: Module) -> Top:
    """Lifts of a basis of m/Jm.

    Unit vectors are tried deepest filtration weight first, so in a module whose coordinate
    weights ascend the chosen lifts are adapted to the radical filtration.
    """
    f = m.field
    jm = radical(m)
    gens: List[Generator] = []
    dims: Dict[Key, int] = {}
    for k in m.keys():
        need = m.dim(k) - jm[k].dim
        if need == 0:
            continue
        dims[k] = need
        w = m.weight(k)
        span = jm[k]
        chosen = 0
        for j in sorted(range(m.dim(k)), key=lambda c: (-w[c], c)):
            e = f.unit(m.dim(k), j)
            if span.contains(e):
                continue
            gens.append(Generator(key=k, vector=e, weight=w[j]))
            span = span + Subspace.span(f, m.dim(k), [e])
            chosen += 1
            if chosen == need:
                break
    return Top(generators=tuple(gens), dims=dims)
