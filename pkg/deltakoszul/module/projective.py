from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from deltakoszul.algebra import AlgebraTable, Path
from deltakoszul.common.errors import BadVector, InvalidModule, TruncationExceeded
from deltakoszul.common.types import Key
from deltakoszul.module.core import Module, Morphism, ProjectiveShape


def projective(t: AlgebraTable, shape: ProjectiveShape, bound: Optional[int] = None) -> Module:
    """⊕ Ae_v[-s] with coordinates labelled by (summand, basis monomial).

    Graded coordinates at a key are ordered by summand then monomial; finite-dimensional ones by
    filtration weight (shift + path length) first, so weights ascend inside every key.
    """
    f = t.field
    if t.graded:
        bound = t.bound if bound is None else bound
    else:
        bound = None
    raw: Dict[Key, List[Tuple[int, int, Path]]] = defaultdict(list)
    n = t.n_vertices
    for i, (v, s) in enumerate(shape.summands):
        if t.graded:
            if s < 0:
                raise InvalidModule(f"summand shift {s} is negative")
            top = bound - s
            if top > t.bound:
                raise TruncationExceeded(f"Ae_{v}[-{s}] up to degree {bound} needs A_{top}", degree=top)
            for L in range(top + 1):
                for w in range(n):
                    for p in t.basis(v, w, L):
                        raw[(s + L, w)].append((s + L, i, p))
        else:
            for w in range(n):
                for p in t.basis(v, w):
                    raw[(0, w)].append((s + p.length, i, p))

    labels: Dict[Key, Tuple[Tuple[int, Path], ...]] = {}
    weights: Dict[Key, Tuple[int, ...]] = {}
    index: Dict[Tuple[int, Path], Tuple[Key, int]] = {}
    for key, items in raw.items():
        items.sort(key=lambda it: (it[0], it[1], it[2].sort_key()))
        labels[key] = tuple((i, p) for _, i, p in items)
        weights[key] = tuple(wt for wt, _, _ in items)
        for j, (_, i, p) in enumerate(items):
            index[(i, p)] = (key, j)
    dims = {k: len(v) for k, v in labels.items()}

    action: Dict[Tuple[int, Key], np.ndarray] = {}
    arrows = t.quiver.arrows
    for key, labs in labels.items():
        for a in t.quiver.arrows_from(key[1]):
            nk = (key[0] + 1, arrows[a].target) if t.graded else (0, arrows[a].target)
            if t.graded and nk[0] > bound:
                continue
            if nk not in dims:
                continue
            arr = f.zeros((dims[key], dims[nk]))
            for j, (i, p) in enumerate(labs):
                for b, c in t.reduce(p.then_arrow(a, arrows[a].target)).items():
                    _, j2 = index[(i, b)]
                    arr[j, j2] = c
            if not f.is_zero(arr):
                action[(a, key)] = arr

    generators: List[Optional[Tuple[Key, int]]] = []
    for i, (v, _) in enumerate(shape.summands):
        generators.append(index.get((i, Path.trivial(v))))
    return Module(
        algebra=t,
        dims=dims,
        action=action,
        bound=bound,
        weights=weights,
        shape=shape,
        labels=labels,
        generators=tuple(generators),
    )


def generator_key(p: Module, i: int) -> Key:
    assert p.shape is not None
    v, s = p.shape.summands[i]
    return (s, v) if p.graded else (0, v)


def map_from_projective(p: Module, target: Module, images: Sequence[np.ndarray]) -> Morphism:
    """The morphism P → target sending the generator of summand i to ``images[i]``."""
    if p.shape is None:
        raise InvalidModule("domain is not a labelled projective")
    if len(images) != len(p.shape):
        raise BadVector(f"{len(images)} images for {len(p.shape)} summands")
    f = p.field
    if p.graded and target.bound is not None and p.bound is not None and p.bound > target.bound:
        raise TruncationExceeded(f"projective trusted to {p.bound}, target only to {target.bound}")
    imgs = []
    for i, img in enumerate(images):
        gk = generator_key(p, i)
        vec = f.asarray(img, ndim=1)
        if vec.shape[0] != target.dim(gk):
            raise BadVector(f"image of generator {i} has length {vec.shape[0]}, expected {target.dim(gk)}", key=gk)
        imgs.append(vec)

    blocks: Dict[Key, np.ndarray] = {}
    cache: Dict[Tuple[int, Tuple[int, ...]], np.ndarray] = {}
    for key in p.keys():
        out = f.zeros((p.dim(key), target.dim(key)))
        for j, (i, path) in enumerate(p.labels[key]):
            out[j] = _walk(target, imgs[i], generator_key(p, i), path, cache, i)
        blocks[key] = out
    return Morphism(p, target, blocks)


def _walk(
    target: Module,
    start: np.ndarray,
    key: Key,
    path: Path,
    cache: Dict[Tuple[int, Tuple[int, ...]], np.ndarray],
    summand: int,
) -> np.ndarray:
    f = target.field
    v = start
    cur = key
    for n, a in enumerate(path.arrows):
        memo = cache.get((summand, path.arrows[: n + 1]))
        nk = target.next_key(a, cur)
        if memo is None:
            memo = f.matmul(v.reshape(1, -1), target.arr(a, cur))[0]
            cache[(summand, path.arrows[: n + 1])] = memo
        v, cur = memo, nk
    return v


def summand_inclusion(small: Module, big: Module, offset: int) -> Morphism:
    """Inclusion of ``small`` as the summands ``offset, offset+1, ...`` of ``big``."""
    return _by_labels(small, big, offset, forward=True)


def summand_projection(big: Module, small: Module, offset: int) -> Morphism:
    """Projection of ``big`` onto its summands ``offset, offset+1, ...`` matching ``small``."""
    return _by_labels(small, big, offset, forward=False)


def _by_labels(small: Module, big: Module, offset: int, forward: bool) -> Morphism:
    f = small.field
    blocks: Dict[Key, np.ndarray] = {}
    for key in sorted(set(small.keys()) | set(big.keys())):
        pos = {lab: j for j, lab in enumerate(big.labels.get(key, ()))}
        m = f.zeros((small.dim(key), big.dim(key)))
        for j, (i, path) in enumerate(small.labels.get(key, ())):
            m[j, pos[(i + offset, path)]] = f.coerce(1)
        blocks[key] = m if forward else m.T.copy()
    if forward:
        return Morphism(small, big, blocks)
    return Morphism(big, small, blocks)
