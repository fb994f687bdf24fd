from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from deltakoszul.algebra import AlgebraTable
from deltakoszul.exactla import Field
from deltakoszul.horseshoe import ShortExactSequence
from deltakoszul.module import Module, Morphism

META_KEYS = ("seed", "suite", "nmax", "profile", "expect")


@dataclass
class Workspace:
    """Everything one input file defines, in definition order."""

    field: Field
    algebra: AlgebraTable
    modules: Dict[str, Module] = field(default_factory=dict)
    maps: Dict[str, Morphism] = field(default_factory=dict)
    maps_ends: Dict[str, tuple] = field(default_factory=dict)  # name -> (domain name, codomain name)
    ses: Dict[str, ShortExactSequence] = field(default_factory=dict)
    ses_parts: Dict[str, tuple] = field(default_factory=dict)  # name -> (K, i, M, p, N)
    meta: Dict[str, str] = field(default_factory=dict)
    source: Optional[str] = None

    def names(self) -> List[str]:
        return list(self.modules) + list(self.maps) + list(self.ses)

    def same_as(self, other: "Workspace") -> bool:
        """Equal fields, relations, modules and maps (stored representations, not up to isomorphism)."""
        if self.field != other.field or self.algebra.spec != other.algebra.spec:
            return False
        if list(self.modules) != list(other.modules) or list(self.maps) != list(other.maps):
            return False
        if self.ses_parts != other.ses_parts:
            return False
        for name, m in self.modules.items():
            if not m.same_as(other.modules[name]):
                return False
        for name, f in self.maps.items():
            g = other.maps[name]
            for k in f.domain.keys():
                if f.block(k).tolist() != g.block(k).tolist():
                    return False
        return True


def workspace_from_ses(
    s: ShortExactSequence,
    name: str = "xi",
    meta: Optional[Dict[str, str]] = None,
) -> Workspace:
    ws = Workspace(field=s.M.field, algebra=s.algebra, meta=dict(meta or {}))
    ws.modules.update({"K": s.K, "M": s.M, "N": s.N})
    ws.maps.update({"i": s.i, "p": s.p})
    ws.maps_ends.update({"i": ("K", "M"), "p": ("M", "N")})
    ws.ses[name] = s
    ws.ses_parts[name] = ("K", "i", "M", "p", "N")
    return ws


def workspace_from_module(m: Module, name: str = "M", meta: Optional[Dict[str, str]] = None) -> Workspace:
    ws = Workspace(field=m.field, algebra=m.algebra, meta=dict(meta or {}))
    ws.modules[name] = m
    return ws


def _matrix(f: Field, arr) -> str:
    return "[" + ",".join("[" + ",".join(f.format(x) for x in row) + "]" for row in arr) + "]"


def dump_workspace(ws: Workspace) -> str:
    """The workspace in the input format; parsing the result gives an equal workspace."""
    t = ws.algebra
    q = t.quiver
    f = ws.field
    out: List[str] = []
    for key in META_KEYS:
        if key in ws.meta:
            out.append(f"{key} {ws.meta[key]}")
    out.append(f"field {f.name}")
    out.append(f"algebra graded D={t.bound}" if t.graded else f"algebra findim N={t.bound}")
    out.append("vertex " + " ".join(q.vertices))
    for a in q.arrows:
        out.append(f"arrow {a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
    for r in t.spec.relations:
        out.append(f"relation {r.label(q, f)}")
    for name, m in ws.modules.items():
        out.append("")
        out.append(f"module {name}")
        for k in m.keys():
            out.append(f"  space {q.vertices[k[1]]} deg {k[0]} dim {m.dim(k)}")
        for k in m.keys():
            for a, nk in m.outgoing(k):
                if m.dim(nk) == 0:
                    continue
                arr = m.arr(a, k)
                if f.is_zero(arr):
                    continue
                out.append(f"  act {q.arrows[a].name} deg {k[0]} = {_matrix(f, arr)}")
    for name, g in ws.maps.items():
        dom, cod = ws.maps_ends[name]
        out.append("")
        out.append(f"map {name}: {dom} -> {cod}")
        for k in g.domain.keys():
            if g.codomain.dim(k) == 0:
                continue
            b = g.block(k)
            if f.is_zero(b):
                continue
            out.append(f"  block {q.vertices[k[1]]} deg {k[0]} = {_matrix(f, b)}")
    for name, (K, i, M, p, N) in ws.ses_parts.items():
        out.append("")
        out.append(f"ses {name} = {K} -{i}-> {M} -{p}-> {N}")
    return "\n".join(out) + "\n"
