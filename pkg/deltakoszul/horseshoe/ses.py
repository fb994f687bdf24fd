from __future__ import annotations

from dataclasses import dataclass

from deltakoszul.common.errors import (
    AmbientMismatch,
    InvalidMorphism,
    NotExactAtMiddle,
    NotInjective,
    NotSurjective,
)
from deltakoszul.exactla import left_kernel
from deltakoszul.module import Module, Morphism, direct_sum_maps, image_subspaces, validate_morphism


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    """0 → K -i→ M -p→ N → 0, validated at construction by ``make_ses``."""

    K: Module
    M: Module
    N: Module
    i: Morphism
    p: Morphism

    @property
    def algebra(self):
        return self.M.algebra

    @property
    def graded(self) -> bool:
        return self.M.graded

    def dims(self) -> str:
        return f"{self.K.total_dim()} -> {self.M.total_dim()} -> {self.N.total_dim()}"


def make_ses(K: Module, M: Module, N: Module, i: Morphism, p: Morphism) -> ShortExactSequence:
    for a, b in ((i.domain, K), (i.codomain, M), (p.domain, M), (p.codomain, N)):
        if a is not b and a.dim_vector() != b.dim_vector():
            raise AmbientMismatch("maps do not connect K, M and N")
    for f, name in ((i, "i"), (p, "p")):
        v = validate_morphism(f)
        if v.failed:
            raise InvalidMorphism(f"{name} is not a module map: {v.witness.get('reason')}", **v.witness)
    for k in K.keys():
        if i.rank(k) < K.dim(k):
            raise NotInjective(f"i has a kernel at degree {k[0]}, vertex {k[1]}", key=k)
    img_p = image_subspaces(p)
    for k in N.keys():
        if not img_p[k].is_full():
            raise NotSurjective(f"p misses part of N at degree {k[0]}, vertex {k[1]}", key=k)
    img_i = image_subspaces(i)
    for k in M.keys():
        if img_i[k] != left_kernel(p.matrix(k)):
            raise NotExactAtMiddle(f"image(i) differs from kernel(p) at degree {k[0]}, vertex {k[1]}", key=k)
    return ShortExactSequence(K=K, M=M, N=N, i=i, p=p)


def split_ses(K: Module, N: Module) -> ShortExactSequence:
    """0 → K → K ⊕ N → N → 0 with the canonical maps."""
    s, inc_k, _, _, pr_n = direct_sum_maps(K, N)
    return make_ses(K, s, N, inc_k, pr_n)
