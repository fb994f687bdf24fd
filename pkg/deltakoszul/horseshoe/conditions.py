from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from deltakoszul.common.errors import NotExactAtMiddle, NotInjective, NotSurjective
from deltakoszul.common.types import Key
from deltakoszul.exactla import Subspace, intersect, solve
from deltakoszul.horseshoe.ses import ShortExactSequence, make_ses
from deltakoszul.module import (
    Module,
    Morphism,
    image_subspaces,
    quotient,
    radical_multiple,
    restrict,
    submodule,
)


@dataclass(frozen=True)
class RadicalCondition:
    """Outcome of comparing i(J^s K) with i(K) ∩ J^s M inside M."""

    holds: bool
    power: int = 1
    key: Optional[Key] = None
    dim_jk: int = 0
    dim_k_jm: int = 0

    def witness(self) -> Dict[str, int]:
        if self.key is None:
            return {}
        return {"degree": self.key[0], "vertex": self.key[1], "dim_jk": self.dim_jk, "dim_k_jm": self.dim_k_jm}

    def describe(self, vertices) -> str:
        j = "J" if self.power == 1 else f"J^{self.power}"
        if self.holds:
            return f"radical condition holds: {j}K = K∩{j}M"
        d, v = self.key
        return (
            f"radical condition FAILS at (degree {d}, {vertices[v]}): "
            f"dim {j}K={self.dim_jk} < dim K∩{j}M={self.dim_k_jm}"
        )


def radical_condition(s: ShortExactSequence, power: int = 1) -> RadicalCondition:
    """J^s K = K ∩ J^s M, both sides computed as subspaces of M per (degree, vertex)."""
    f = s.M.field
    jk = radical_multiple(power, s.K)
    jm = radical_multiple(power, s.M)
    img_k = image_subspaces(s.i)
    for k in s.M.keys():
        if s.K.dim(k):
            lhs = jk[k].image(s.i.matrix(k))
        else:
            lhs = Subspace.zero(f, s.M.dim(k))
        rhs = intersect(img_k[k], jm[k])
        if lhs != rhs:
            return RadicalCondition(False, power, k, lhs.dim, rhs.dim)
    return RadicalCondition(True, power)


def radical_submodule(m: Module) -> Tuple[Module, Morphism]:
    return submodule(m, radical_multiple(1, m))


def top_quotient(m: Module) -> Tuple[Module, Morphism]:
    return quotient(m, radical_multiple(1, m))


def induced_map(f: Morphism, q_dom: Morphism, q_cod: Morphism) -> Morphism:
    """The map X/Y → Z/W induced by f: X → Z, given the two quotient projections."""
    fld = f.field
    blocks = {}
    for k in q_dom.codomain.keys():
        n = q_dom.codomain.dim(k)
        out = fld.zeros((n, q_cod.codomain.dim(k)))
        for j in range(n):
            lift = solve(q_dom.matrix(k), fld.unit(n, j))
            row = fld.matmul(lift.reshape(1, -1), f.block(k))
            out[j] = fld.matmul(row, q_cod.block(k))[0]
        blocks[k] = out
    return Morphism(q_dom.codomain, q_cod.codomain, blocks)


def _is_exact(K: Module, M: Module, N: Module, i: Morphism, p: Morphism) -> bool:
    try:
        make_ses(K, M, N, i, p)
    except (NotInjective, NotSurjective, NotExactAtMiddle):
        return False
    return True


def radical_row_exact(s: ShortExactSequence) -> bool:
    """0 → JK → JM → JN → 0 with the restricted maps."""
    jk, inc_k = radical_submodule(s.K)
    jm, inc_m = radical_submodule(s.M)
    jn, inc_n = radical_submodule(s.N)
    return _is_exact(jk, jm, jn, restrict(s.i, inc_k, inc_m), restrict(s.p, inc_m, inc_n))


def top_maps(s: ShortExactSequence) -> Tuple[Morphism, Morphism]:
    """K/JK → M/JM → N/JN."""
    _, qk = top_quotient(s.K)
    _, qm = top_quotient(s.M)
    _, qn = top_quotient(s.N)
    return induced_map(s.i, qk, qm), induced_map(s.p, qm, qn)


def top_row_exact(s: ShortExactSequence) -> bool:
    ti, tp = top_maps(s)
    return _is_exact(ti.domain, ti.codomain, tp.codomain, ti, tp)


def top_map_injective(s: ShortExactSequence) -> bool:
    ti, _ = top_maps(s)
    return ti.is_injective()


def snake_dims_consistent(s: ShortExactSequence) -> bool:
    """dim JM = dim JK + dim JN at every key."""
    jk = radical_multiple(1, s.K)
    jm = radical_multiple(1, s.M)
    jn = radical_multiple(1, s.N)
    keys = set(s.K.keys()) | set(s.M.keys()) | set(s.N.keys())
    dim = lambda d, k: d[k].dim if k in d else 0  # noqa: E731
    return all(dim(jm, k) == dim(jk, k) + dim(jn, k) for k in keys)
