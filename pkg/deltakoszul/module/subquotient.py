from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from deltakoszul.common.errors import (
    AmbientMismatch,
    BadVector,
    InvalidModule,
    InvalidMorphism,
    ModeMismatch,
    TruncationExceeded,
)
from deltakoszul.common.types import Key
from deltakoszul.exactla import Subspace, left_kernel
from deltakoszul.module.core import Module, Morphism, ProjectiveShape


def _pivots(rows: np.ndarray) -> List[int]:
    out = []
    for r in rows:
        nz = np.flatnonzero(r != 0)
        out.append(int(nz[0]))
    return out


def submodule(m: Module, subs: Mapping[Key, Subspace]) -> Tuple[Module, Morphism]:
    """The submodule with the given canonical bases, and its inclusion into m."""
    f = m.field
    dims = {k: s.dim for k, s in subs.items() if s.dim}
    action: Dict[Tuple[int, Key], np.ndarray] = {}
    for k in dims:
        rows = subs[k].rows
        for a, nk in m.outgoing(k):
            img = f.matmul(rows, m.arr(a, k))
            if f.is_zero(img):
                continue
            target = subs.get(nk)
            if target is None or target.is_zero():
                raise InvalidModule("subspaces are not closed under the action", key=k)
            coords = img[:, list(target.pivots)]
            if not np.array_equal(f.matmul(coords, target.rows), img):
                raise InvalidModule("subspaces are not closed under the action", key=k)
            action[(a, k)] = coords
    weights = {}
    for k in dims:
        if m.has_ascending_weights(k):
            w = m.weight(k)
            weights[k] = tuple(w[c] for c in subs[k].pivots)
    sub = Module(algebra=m.algebra, dims=dims, action=action, bound=m.bound, weights=weights)
    incl = Morphism(sub, m, {k: subs[k].rows.copy() for k in dims})
    return sub, incl


def quotient(m: Module, subs: Mapping[Key, Subspace]) -> Tuple[Module, Morphism]:
    """m modulo a submodule; the quotient keeps the non-pivot coordinates of each subspace."""
    f = m.field
    comp: Dict[Key, Tuple[int, ...]] = {}
    proj: Dict[Key, np.ndarray] = {}
    for k in m.keys():
        s = subs.get(k) or Subspace.zero(f, m.dim(k))
        comp[k] = s.complement_coordinates()
        p = f.zeros((m.dim(k), len(comp[k])))
        for r in range(m.dim(k)):
            rem = s.reduce(f.unit(m.dim(k), r))
            p[r] = rem[list(comp[k])] if comp[k] else p[r]
        proj[k] = p
    dims = {k: len(c) for k, c in comp.items() if c}
    action: Dict[Tuple[int, Key], np.ndarray] = {}
    for k in dims:
        for a, nk in m.outgoing(k):
            if nk not in dims:
                continue
            rows = m.arr(a, k)[list(comp[k])]
            arr = f.matmul(rows, proj[nk])
            if not f.is_zero(arr):
                action[(a, k)] = arr
    q = Module(algebra=m.algebra, dims=dims, action=action, bound=m.bound)
    return q, Morphism(m, q, proj)


def kernel(f: Morphism) -> Tuple[Module, Morphism]:
    subs = {k: left_kernel(f.matrix(k)) for k in f.domain.keys()}
    return submodule(f.domain, subs)


def image_subspaces(f: Morphism) -> Dict[Key, Subspace]:
    fld = f.field
    out = {}
    for k in f.codomain.keys():
        b = f.block(k)
        out[k] = Subspace.span(fld, f.codomain.dim(k), b) if b.shape[0] else Subspace.zero(fld, f.codomain.dim(k))
    return out


def image(f: Morphism) -> Tuple[Module, Morphism]:
    return submodule(f.codomain, image_subspaces(f))


def cokernel(f: Morphism) -> Tuple[Module, Morphism]:
    return quotient(f.codomain, image_subspaces(f))


def restrict(f: Morphism, dom_incl: Morphism, cod_incl: Morphism) -> Morphism:
    """f restricted to submodules: dom_incl: S → f.domain, cod_incl: T → f.codomain."""
    fld = f.field
    blocks = {}
    for k in dom_incl.domain.keys():
        img = fld.matmul(dom_incl.block(k), f.block(k))
        rows = cod_incl.block(k)
        if rows.shape[0] == 0:
            if not fld.is_zero(img):
                raise InvalidMorphism("image leaves the target submodule", key=k)
            blocks[k] = fld.zeros((img.shape[0], 0))
            continue
        coords = img[:, _pivots(rows)]
        if not np.array_equal(fld.matmul(coords, rows), img):
            raise InvalidMorphism("image leaves the target submodule", key=k)
        blocks[k] = coords
    return Morphism(dom_incl.domain, cod_incl.domain, blocks)


def submodule_generated(m: Module, vectors: Iterable[Tuple[Key, Sequence]]) -> Tuple[Module, Morphism]:
    f = m.field
    spans: Dict[Key, Subspace] = {k: Subspace.zero(f, m.dim(k)) for k in m.keys()}
    queue: deque = deque()
    for key, coords in vectors:
        key = (int(key[0]), int(key[1]))
        if key not in spans:
            raise BadVector(f"no space at degree {key[0]}, vertex {key[1]}", key=key)
        vec = f.asarray(coords, ndim=1)
        if vec.shape[0] != m.dim(key):
            raise BadVector(f"vector of length {vec.shape[0]} at a space of dimension {m.dim(key)}", key=key)
        grown = spans[key] + Subspace.span(f, m.dim(key), [vec])
        if grown.dim > spans[key].dim:
            spans[key] = grown
            queue.append(key)
    while queue:
        k = queue.popleft()
        for a, nk in m.outgoing(k):
            if nk not in spans:
                continue
            grown = spans[nk] + spans[k].image(m.act(a, k))
            if grown.dim > spans[nk].dim:
                spans[nk] = grown
                queue.append(nk)
    return submodule(m, spans)


def direct_sum(a: Module, b: Module) -> Module:
    return direct_sum_maps(a, b)[0]


def direct_sum_maps(a: Module, b: Module) -> Tuple[Module, Morphism, Morphism, Morphism, Morphism]:
    """a ⊕ b with the inclusions of a and b and the projections onto a and b."""
    if a.algebra is not b.algebra:
        raise AmbientMismatch("direct sum of modules over different algebras")
    f = a.field
    bound = a.bound if b.bound is None else (b.bound if a.bound is None else min(a.bound, b.bound))
    keys = sorted(set(a.keys()) | set(b.keys()))
    keys = [k for k in keys if not a.graded or bound is None or k[0] <= bound]
    dims = {k: a.dim(k) + b.dim(k) for k in keys}
    action: Dict[Tuple[int, Key], np.ndarray] = {}
    for k in keys:
        for arrow in a.algebra.quiver.arrows_from(k[1]):
            nk = a.next_key(arrow, k)
            if nk not in dims:
                continue
            if a.graded and bound is not None and nk[0] > bound:
                continue
            arr = f.zeros((dims[k], dims[nk]))
            arr[: a.dim(k), : a.dim(nk)] = a.arr(arrow, k)
            arr[a.dim(k) :, a.dim(nk) :] = b.arr(arrow, k)
            if not f.is_zero(arr):
                action[(arrow, k)] = arr
    weights = {k: a.weight(k) + b.weight(k) for k in keys}
    shape = None
    labels: Dict[Key, tuple] = {}
    generators: tuple = ()
    if a.shape is not None and b.shape is not None:
        off = len(a.shape)
        shape = a.shape + b.shape
        for k in keys:
            labels[k] = tuple(a.labels.get(k, ())) + tuple((i + off, p) for i, p in b.labels.get(k, ()))
        generators = tuple(a.generators) + tuple(
            None if g is None else (g[0], g[1] + a.dim(g[0])) for g in b.generators
        )
    s = Module(
        algebra=a.algebra,
        dims=dims,
        action=action,
        bound=bound,
        weights=weights,
        shape=shape,
        labels=labels,
        generators=generators,
    )
    inc_a, inc_b, pr_a, pr_b = {}, {}, {}, {}
    for k in keys:
        ea = f.zeros((a.dim(k), dims[k]))
        eb = f.zeros((b.dim(k), dims[k]))
        for j in range(a.dim(k)):
            ea[j, j] = f.coerce(1)
        for j in range(b.dim(k)):
            eb[j, a.dim(k) + j] = f.coerce(1)
        inc_a[k], inc_b[k] = ea, eb
        pr_a[k], pr_b[k] = ea.T.copy(), eb.T.copy()
    return s, Morphism(a, s, inc_a), Morphism(b, s, inc_b), Morphism(s, a, pr_a), Morphism(s, b, pr_b)


def shift(m: Module, n: int) -> Module:
    """M[n], with (M[n])_t = M_{n+t}: a space in degree d moves to degree d - n."""
    if not m.graded:
        raise ModeMismatch("shifts are defined for graded modules")
    t = m.algebra
    for k in m.keys():
        if k[0] - n < 0:
            raise TruncationExceeded(f"shift by {n} moves degree {k[0]} below zero", key=k)
    bound = None if m.bound is None else min(m.bound - n, t.bound)

    def keep(k: Key) -> bool:
        return bound is None or k[0] <= bound

    move = lambda k: (k[0] - n, k[1])  # noqa: E731
    dims = {move(k): d for k, d in m.dims.items() if d and keep(move(k))}
    action = {}
    for (a, k), arr in m.action.items():
        nk = move(m.next_key(a, k))
        if move(k) in dims and nk in dims:
            action[(a, move(k))] = arr
    weights = {move(k): tuple(x - n for x in w) for k, w in m.weights.items() if move(k) in dims}
    shape = None
    labels = {}
    generators: tuple = ()
    if m.shape is not None:
        shape = ProjectiveShape(tuple((v, s - n) for v, s in m.shape.summands))
        labels = {move(k): lab for k, lab in m.labels.items() if move(k) in dims}
        generators = tuple(None if g is None or move(g[0]) not in dims else (move(g[0]), g[1]) for g in m.generators)
    return Module(
        algebra=t,
        dims=dims,
        action=action,
        bound=bound,
        weights=weights,
        shape=shape,
        labels=labels,
        generators=generators,
    )


def simple(t, vertex: int, degree: int = 0, bound: Optional[int] = None) -> Module:
    """The simple module k_v, concentrated in one degree."""
    if t.graded:
        bound = t.bound if bound is None else bound
        if degree < 0 or degree > bound:
            raise TruncationExceeded(f"degree {degree} outside 0..{bound}")
        key = (degree, vertex)
    else:
        bound = None
        key = (0, vertex)
    return Module(algebra=t, dims={key: 1}, bound=bound, weights={key: (degree,)})


def semisimple_top(t) -> Module:
    """A_0 = ⊕_v k_v (resp. R/J)."""
    key_deg = 0
    dims = {(key_deg, v): 1 for v in range(t.n_vertices)}
    return Module(
        algebra=t,
        dims=dims,
        bound=t.bound if t.graded else None,
        weights={k: (0,) for k in dims},
    )
