from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from deltakoszul.algebra import AlgebraTable, Path
from deltakoszul.common.errors import AmbientMismatch
from deltakoszul.common.types import Key, Verdict
from deltakoszul.exactla import Field, Mat
from deltakoszul.exactla import rank as matrix_rank


@dataclass(frozen=True)
class ProjectiveShape:
    """Multiset of summands Ae_v[-s], stored as (vertex, shift) pairs."""

    summands: Tuple[Tuple[int, int], ...] = ()

    def __add__(self, other: "ProjectiveShape") -> "ProjectiveShape":
        return ProjectiveShape(self.summands + other.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def counter(self) -> Counter:
        return Counter(self.summands)

    def vertex_counter(self) -> Counter:
        return Counter(v for v, _ in self.summands)

    def sorted(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.summands))

    def label(self, vertices: Sequence[str]) -> str:
        if not self.summands:
            return "{}"
        return "{" + ",".join(f"({vertices[v]},{s})" for v, s in self.sorted()) + "}"


def shapes_equal(a: ProjectiveShape, b: ProjectiveShape) -> bool:
    return a.counter() == b.counter()


@dataclass(frozen=True, eq=False)
class Module:
    """A (graded) quiver representation.

    ``dims`` and ``action`` list nonzero spaces only. ``action[(arrow, key)]`` maps the space at
    ``key`` to the space at the arrow's target one degree up (same layer in finite-dimensional
    mode). ``bound`` is the largest trusted degree of a graded module.
    """

    algebra: AlgebraTable
    dims: Mapping[Key, int]
    action: Mapping[Tuple[int, Key], np.ndarray] = field(default_factory=dict)
    bound: Optional[int] = None
    weights: Mapping[Key, Tuple[int, ...]] = field(default_factory=dict)
    shape: Optional[ProjectiveShape] = None
    labels: Mapping[Key, Tuple[Tuple[int, Path], ...]] = field(default_factory=dict)
    generators: Tuple[Optional[Tuple[Key, int]], ...] = ()

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def graded(self) -> bool:
        return self.algebra.graded

    @property
    def is_projective(self) -> bool:
        return self.shape is not None

    def keys(self) -> List[Key]:
        return sorted(k for k, d in self.dims.items() if d)

    def dim(self, key: Key) -> int:
        return self.dims.get(key, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def next_key(self, arrow: int, key: Key) -> Key:
        a = self.algebra.quiver.arrows[arrow]
        if key[1] != a.source:
            raise ValueError(f"arrow {a.name} does not start at vertex {key[1]}")
        return (key[0] + 1, a.target) if self.graded else (0, a.target)

    def in_bound(self, key: Key) -> bool:
        return not self.graded or self.bound is None or key[0] <= self.bound

    def outgoing(self, key: Key) -> Iterator[Tuple[int, Key]]:
        """(arrow, target key) pairs leaving ``key`` inside the trusted range."""
        for i in self.algebra.quiver.arrows_from(key[1]):
            nk = self.next_key(i, key)
            if self.in_bound(nk):
                yield i, nk

    def arr(self, arrow: int, key: Key) -> np.ndarray:
        nk = self.next_key(arrow, key)
        got = self.action.get((arrow, key))
        if got is not None:
            return got
        return self.field.zeros((self.dim(key), self.dim(nk)))

    def act(self, arrow: int, key: Key) -> Mat:
        return Mat(self.field, self.arr(arrow, key))

    def path_matrix(self, path: Path, key: Key) -> Optional[np.ndarray]:
        """Matrix of a path acting from ``key``; None when it leaves the trusted range."""
        f = self.field
        cur = key
        out = f.identity(self.dim(key))
        for i in path.arrows:
            nk = self.next_key(i, cur)
            if not self.in_bound(nk):
                return None
            out = f.matmul(out, self.arr(i, cur))
            cur = nk
        return out

    def weight(self, key: Key) -> Tuple[int, ...]:
        w = self.weights.get(key)
        if w is not None:
            return w
        return (key[0],) * self.dim(key)

    def has_ascending_weights(self, key: Key) -> bool:
        w = self.weight(key)
        return all(a <= b for a, b in zip(w, w[1:]))

    def dim_vector(self) -> Dict[Key, int]:
        return {k: self.dim(k) for k in self.keys()}

    def same_as(self, other: "Module") -> bool:
        """Equality of the stored representation (not isomorphism)."""
        if self.dim_vector() != other.dim_vector() or self.bound != other.bound:
            return False
        for k in self.keys():
            for a, nk in self.outgoing(k):
                if not np.array_equal(self.arr(a, k), other.arr(a, k)):
                    return False
        return True


@dataclass(frozen=True, eq=False)
class Morphism:
    domain: Module
    codomain: Module
    blocks: Mapping[Key, np.ndarray] = field(default_factory=dict)

    @property
    def field(self) -> Field:
        return self.domain.field

    def block(self, key: Key) -> np.ndarray:
        got = self.blocks.get(key)
        if got is not None:
            return got
        return self.field.zeros((self.domain.dim(key), self.codomain.dim(key)))

    def matrix(self, key: Key) -> Mat:
        return Mat(self.field, self.block(key))

    def keys(self) -> List[Key]:
        return self.domain.keys()

    def apply(self, key: Key, v: np.ndarray) -> np.ndarray:
        return self.field.matmul(v.reshape(1, -1), self.block(key))[0]

    def then(self, other: "Morphism") -> "Morphism":
        """``other ∘ self``."""
        if other.domain is not self.codomain and other.domain.dim_vector() != self.codomain.dim_vector():
            raise AmbientMismatch("morphisms do not compose")
        f = self.field
        blocks = {k: f.matmul(self.block(k), other.block(k)) for k in self.domain.keys()}
        return Morphism(self.domain, other.codomain, blocks)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(self.block(k)) for k in self.domain.keys())

    def rank(self, key: Key) -> int:
        return matrix_rank(self.matrix(key))

    def is_injective(self) -> bool:
        return all(self.rank(k) == self.domain.dim(k) for k in self.domain.keys())

    def is_surjective(self) -> bool:
        return all(self.rank(k) == self.codomain.dim(k) for k in self.codomain.keys())


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g ∘ f."""
    return f.then(g)


def identity(m: Module) -> Morphism:
    return Morphism(m, m, {k: m.field.identity(m.dim(k)) for k in m.keys()})


def validate(m: Module) -> Verdict:
    """Block shapes, degree range and relation annihilation."""
    t = m.algebra
    f = m.field
    for k in m.keys():
        if m.graded and (k[0] < 0 or (m.bound is not None and k[0] > m.bound)):
            return Verdict.fails(reason="degree outside the trusted range", key=k)
        if not m.graded and k[0] != 0:
            return Verdict.fails(reason="finite-dimensional modules live in layer 0", key=k)
    for (a, k), arr in m.action.items():
        nk = m.next_key(a, k)
        if arr.shape != (m.dim(k), m.dim(nk)):
            return Verdict.fails(reason="action block has the wrong shape", arrow=t.quiver.arrows[a].name, key=k)
    for r in t.spec.relations:
        for k in m.keys():
            if k[1] != r.source:
                continue
            acc = None
            for c, p in r.terms:
                pm = m.path_matrix(p, k)
                if pm is None:
                    acc = None
                    break
                term = f.normalize(pm * c)
                acc = term if acc is None else f.normalize(acc + term)
            if acc is not None and not f.is_zero(acc):
                return Verdict.fails(relation=r.label(t.quiver, f), key=k)
    if not m.graded:
        n = t.bound
        for k in m.keys():
            for p in t.quiver.paths(n, source=k[1]):
                pm = m.path_matrix(p, k)
                if pm is not None and not f.is_zero(pm):
                    return Verdict.fails(relation=f"path {p.label(t.quiver)} of length N={n}", key=k)
    return Verdict.certified()


def validate_morphism(f: Morphism) -> Verdict:
    fld = f.field
    dom, cod = f.domain, f.codomain
    for k, b in f.blocks.items():
        if b.shape != (dom.dim(k), cod.dim(k)):
            return Verdict.fails(reason="block has the wrong shape", key=k)
    for k in sorted(set(dom.keys()) | set(cod.keys())):
        for a, nk in dom.outgoing(k):
            if not cod.in_bound(nk):
                continue
            left = fld.matmul(f.block(k), cod.arr(a, k))
            right = fld.matmul(dom.arr(a, k), f.block(nk))
            if not np.array_equal(left, right):
                return Verdict.fails(reason="does not commute with the action", key=k, arrow=dom.algebra.quiver.arrows[a].name)
    return Verdict.certified()
