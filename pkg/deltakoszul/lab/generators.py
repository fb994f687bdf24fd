"""Seeded random instances for the audits.

Every generator draws from its own ``random.Random`` seeded from ``GenParams.seed`` so that a
(seed, params) pair always rebuilds the same instance.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from deltakoszul.algebra import AlgebraSpec, AlgebraTable, Quiver, Relation, make_relation
from deltakoszul.common.errors import BadRelation, GenerationFailed
from deltakoszul.common.types import Key, Mode
from deltakoszul.config import get_settings
from deltakoszul.exactla import Field
from deltakoszul.exactla.field import DEFAULT_PRIME
from deltakoszul.horseshoe import ShortExactSequence, make_ses
from deltakoszul.module import (
    Module,
    ProjectiveShape,
    cokernel,
    map_from_projective,
    projective,
    submodule_generated,
)

log = logging.getLogger(__name__)

ARROW_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    mode: Mode = "findim"
    max_vertices: int = 2
    max_arrows: int = 3
    relation_degrees: Tuple[int, ...] = (2, 3)
    max_relations: int = 4
    max_dim: int = 4  # per (degree, vertex) of generated modules
    bound: Optional[int] = None  # D (graded) or N (finite-dimensional)
    field: str = f"F{DEFAULT_PRIME}"  # "Q" for rational instances

    def __post_init__(self) -> None:
        if not 1 <= self.max_vertices <= 3:
            raise ValueError("max_vertices must be between 1 and 3")
        if not 1 <= self.max_arrows <= 4:
            raise ValueError("max_arrows must be between 1 and 4")
        if not self.relation_degrees or not set(self.relation_degrees) <= {2, 3}:
            raise ValueError("relation degrees must be taken from {2, 3}")
        if not 0 <= self.max_relations <= 4:
            raise ValueError("max_relations must be between 0 and 4")
        if not 1 <= self.max_dim <= 4:
            raise ValueError("max_dim must be between 1 and 4")

    @property
    def degree_bound(self) -> int:
        if self.bound is not None:
            return self.bound
        return 5 if self.mode == "graded" else 3

    def with_seed(self, seed: int) -> "GenParams":
        return replace(self, seed=seed)

    def rng(self, purpose: str) -> random.Random:
        return random.Random(f"{self.seed}:{purpose}")


def _coefficient(rng: random.Random) -> int:
    return rng.choice([1, 1, 1, -1, 2, -2, 3])


def random_algebra(p: GenParams) -> AlgebraSpec:
    rng = p.rng("algebra")
    field_ = Field.parse(p.field)
    n = rng.randint(1, p.max_vertices)
    vertices = [f"v{i + 1}" for i in range(n)]
    arrows = []
    for name in ARROW_NAMES[: rng.randint(1, p.max_arrows)]:
        arrows.append((name, rng.choice(vertices), rng.choice(vertices)))
    quiver = Quiver.build(vertices, arrows)

    by_ends = {}
    for L in sorted(set(p.relation_degrees)):
        for path in quiver.paths(L):
            by_ends.setdefault((L, path.source, path.target), []).append(path)
    relations: List[Relation] = []
    if by_ends and p.max_relations:
        groups = sorted(by_ends)
        for _ in range(rng.randint(1, p.max_relations)):
            L, s, t = rng.choice(groups)
            pool = by_ends[(L, s, t)]
            chosen = rng.sample(pool, k=min(len(pool), rng.randint(1, 2)))
            terms = [(_coefficient(rng), path.label(quiver)) for path in chosen]
            if p.mode == "findim" and rng.random() < 0.3:
                other = [q for (L2, s2, t2), qs in by_ends.items() if (s2, t2) == (s, t) and L2 != L for q in qs]
                if other:
                    terms.append((_coefficient(rng), rng.choice(other).label(quiver)))
            try:
                r = make_relation(quiver, field_, terms)
            except BadRelation:
                continue
            if r not in relations:
                relations.append(r)
    return AlgebraSpec(quiver=quiver, relations=tuple(relations), mode=p.mode, bound=p.degree_bound, field=field_)


def _fits(m: Module, limit: int) -> bool:
    return all(d <= limit for d in m.dims.values())


def _random_images(rng: random.Random, p1: Module, p0: Module, spread: int = 2) -> List[np.ndarray]:
    f = p0.field
    out = []
    for i, (v, s) in enumerate(p1.shape.summands):
        key: Key = (s, v) if p0.graded else (0, v)
        dim = p0.dim(key)
        vec = f.random_array(rng, (dim,), spread=spread) if dim else f.zeros(0)
        if not p0.graded:
            # keep the relations inside J·P_0
            w = p0.weight(key)
            for j in range(dim):
                if w[j] < 1:
                    vec[j] = f.coerce(0)
        out.append(vec)
    return out


def random_module(p: GenParams, t: AlgebraTable, budget: Optional[int] = None) -> Module:
    """The cokernel of a random map between random projectives, within the dimension limits."""
    budget = get_settings().RESAMPLE_BUDGET if budget is None else budget
    rng = p.rng("module")
    n = t.n_vertices
    bound = t.bound if t.graded else None
    for attempt in range(budget):
        top = [(rng.randrange(n), 0) for _ in range(rng.randint(1, 2))]
        rel_count = rng.randint(0, 3)
        max_shift = max(1, min(2, t.bound - 1)) if t.graded else 2
        rels = [(rng.randrange(n), rng.randint(1, max_shift)) for _ in range(rel_count)]
        p0 = projective(t, ProjectiveShape(tuple(top)), bound=bound)
        p1 = projective(t, ProjectiveShape(tuple(rels)), bound=bound)
        f = map_from_projective(p1, p0, _random_images(rng, p1, p0))
        m, _ = cokernel(f)
        if _fits(m, p.max_dim):
            log.debug("random module after %d attempt(s): %s", attempt + 1, m.dim_vector())
            return m
    raise GenerationFailed(f"no module within dimension {p.max_dim} after {budget} attempts", witness=p.seed)


def ses_from_vectors(m: Module, vectors: Sequence[Tuple[Key, Sequence]]) -> ShortExactSequence:
    """0 → K → M → M/K → 0 for K generated by the given vectors."""
    k, incl = submodule_generated(m, vectors)
    n, proj = cokernel(incl)
    return make_ses(k, m, n, incl, proj)


def random_ses(p: GenParams, m: Module) -> ShortExactSequence:
    rng = p.rng("ses")
    f = m.field
    keys = m.keys()
    vectors = []
    if keys:
        for _ in range(rng.randint(0, 2)):
            key = rng.choice(keys)
            vectors.append((key, f.random_array(rng, (m.dim(key),), spread=2)))
    return ses_from_vectors(m, vectors)
