"""Normal forms for A = kΓ/I by linear elimination.

Raw paths of a block are ordered shortest first, then lexicographically. Row reducing the ideal
elements eliminates the leftmost (shortest) monomial of each row, and the surviving monomials
form the basis. A path therefore reduces to basis monomials at least as long as itself, so J^s is
spanned by the basis monomials of length >= s.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from deltakoszul.algebra.quiver import AlgebraSpec, Path, Quiver, Relation, check_relation
from deltakoszul.common.errors import ModeMismatch, TruncationExceeded, ValidationFail
from deltakoszul.common.types import Verdict
from deltakoszul.exactla import Field, Subspace
from deltakoszul.exactla.matrix import _rref_array

log = logging.getLogger(__name__)

# Graded blocks are keyed (degree, source, target); finite-dimensional ones (source, target).
BlockKey = Tuple[int, ...]

# An algebra element: coefficients on basis monomials.
Element = Dict[Path, Any]


@dataclass(frozen=True, eq=False)
class Block:
    paths: Tuple[Path, ...]
    basis: Tuple[Path, ...]
    reducer: np.ndarray  # len(paths) x len(basis)
    index: Mapping[Path, int]
    basis_index: Mapping[Path, int]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    spec: AlgebraSpec
    blocks: Mapping[BlockKey, Block]
    nilpotency_index: Optional[int] = None

    @property
    def field(self) -> Field:
        return self.spec.field

    @property
    def quiver(self) -> Quiver:
        return self.spec.quiver

    @property
    def mode(self) -> str:
        return self.spec.mode

    @property
    def graded(self) -> bool:
        return self.spec.mode == "graded"

    @property
    def bound(self) -> int:
        return self.spec.bound

    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    # ------------------------------------------------------------------ blocks
    def block(self, v: int, w: int, length: int = 0) -> Optional[Block]:
        if self.graded:
            if length > self.bound:
                raise TruncationExceeded(f"degree {length} beyond D={self.bound}", degree=length)
            return self.blocks.get((length, v, w))
        return self.blocks.get((v, w))

    def basis(self, v: int, w: int, degree: Optional[int] = None) -> Tuple[Path, ...]:
        if self.graded:
            if degree is None:
                raise ModeMismatch("graded algebras need a degree")
            b = self.block(v, w, degree)
            return b.basis if b else ()
        b = self.block(v, w)
        out = b.basis if b else ()
        return tuple(p for p in out if degree is None or p.length == degree)

    def dim(self, degree: Optional[int] = None) -> int:
        n = self.n_vertices
        if self.graded and degree is None:
            return sum(b.dim for b in self.blocks.values())
        return sum(len(self.basis(v, w, degree)) for v in range(n) for w in range(n))

    def max_length(self) -> int:
        return max((p.length for b in self.blocks.values() for p in b.basis), default=0)

    def layer_dims(self) -> List[int]:
        """dim J^s/J^{s+1} for s = 0, 1, ... (graded: dim A_s up to D)."""
        top = self.bound if self.graded else self.max_length()
        return [self.dim(s) for s in range(top + 1)]

    # ------------------------------------------------------------ normal forms
    def reduce(self, path: Path) -> Element:
        """Normal form of a path as coefficients on basis monomials."""
        if self.graded and path.length > self.bound:
            raise TruncationExceeded(f"path of length {path.length} beyond D={self.bound}", degree=path.length)
        if not self.graded and path.length >= self.bound:
            return {}
        b = self.block(path.source, path.target, path.length)
        if b is None or path not in b.index:
            return {}
        row = b.reducer[b.index[path]]
        return {b.basis[j]: self.field.coerce(row[j]) for j in np.flatnonzero(row != 0)}

    def multiply(self, x: Element, y: Element) -> Element:
        f = self.field
        if self.graded and x and y:
            top = max(p.length for p in x) + max(q.length for q in y)
            if top > self.bound:
                raise TruncationExceeded(f"product of degree {top} beyond D={self.bound}", degree=top)
        out: Dict[Path, Any] = {}
        for p, c in x.items():
            for q, e in y.items():
                r = p.then(q)
                if r is None:
                    continue
                for b, coeff in self.reduce(r).items():
                    out[b] = out.get(b, f.coerce(0)) + c * e * coeff
        if not f.is_rational:
            out = {b: c % f.characteristic for b, c in out.items()}
        return {b: c for b, c in sorted(out.items(), key=lambda kv: kv[0].sort_key()) if c != 0}

    def element(self, *terms: Tuple[Any, str]) -> Element:
        """Element from (coefficient, path text) pairs, reduced to normal form."""
        out: Dict[Path, Any] = {}
        for c, text in terms:
            for b, coeff in self.reduce(self.quiver.parse_path(text)).items():
                out[b] = out.get(b, self.field.coerce(0)) + self.field.coerce(c) * coeff
        if not self.field.is_rational:
            out = {b: c % self.field.characteristic for b, c in out.items()}
        return {b: c for b, c in out.items() if c != 0}

    # --------------------------------------------------------------- radicals
    def radical_power(self, s: int) -> Dict[BlockKey, Subspace]:
        """J^s per block, as a subspace of the block's basis coordinates."""
        if s < 0:
            raise ValueError("radical powers need s >= 0")
        f = self.field
        out: Dict[BlockKey, Subspace] = {}
        for key, b in self.blocks.items():
            vecs = [f.unit(b.dim, j) for j, p in enumerate(b.basis) if p.length >= s]
            out[key] = Subspace.span(f, b.dim, vecs)
        return out

    def radical_dims(self) -> List[int]:
        """dim J^s for s = 0 until it vanishes (or D + 1 in graded mode)."""
        out = []
        s = 0
        top = self.bound + 1 if self.graded else self.max_length() + 1
        while s <= top:
            d = sum(sp.dim for sp in self.radical_power(s).values())
            out.append(d)
            if d == 0:
                break
            s += 1
        return out

    def validate_standard_graded(self) -> Verdict:
        if not self.graded:
            raise ModeMismatch("standard graded checks need a graded algebra")
        f = self.field
        n = self.n_vertices
        arrows = self.quiver.arrows
        for d in range(1, self.bound):
            for v in range(n):
                for w in range(n):
                    target = self.basis(v, w, d + 1)
                    if not target:
                        continue
                    index = {p: j for j, p in enumerate(target)}
                    vecs = []
                    for i, a in enumerate(arrows):
                        if a.source != v:
                            continue
                        x = {Path(v, a.target, (i,)): f.coerce(1)}
                        for q in self.basis(a.target, w, d):
                            prod = self.multiply(x, {q: f.coerce(1)})
                            vec = f.zeros(len(target))
                            for b, c in prod.items():
                                vec[index[b]] = c
                            vecs.append(vec)
                    if Subspace.span(f, len(target), vecs).dim < len(target):
                        return Verdict.fails(degree=d + 1, source=v, target=w)
        return Verdict.certified_up_to(self.bound)


def _ideal_rows(
    quiver: Quiver,
    relations: Iterable[Relation],
    field_: Field,
    graded: bool,
    bound: int,
) -> Dict[BlockKey, List[Dict[Path, Any]]]:
    """Ideal elements p·r·q grouped by block, truncated at length N in finite-dimensional mode."""
    rows: Dict[BlockKey, List[Dict[Path, Any]]] = defaultdict(list)
    top = bound if graded else bound - 1
    by_length: Dict[int, List[Path]] = {L: list(quiver.paths(L)) for L in range(top + 1)}
    for r in relations:
        span = top - r.min_length
        for a in range(span + 1):
            lefts = [p for p in by_length[a] if p.target == r.source]
            for b in range(span - a + 1):
                rights = [q for q in by_length[b] if q.source == r.target]
                for p in lefts:
                    for q in rights:
                        elem: Dict[Path, Any] = {}
                        for c, t in r.terms:
                            full = Path(p.source, q.target, p.arrows + t.arrows + q.arrows)
                            if full.length > top:
                                continue
                            elem[full] = c
                        if not elem:
                            continue
                        if graded:
                            key: BlockKey = (a + r.min_length + b, p.source, q.target)
                        else:
                            key = (p.source, q.target)
                        rows[key].append(elem)
    return rows


def _eliminate(field_: Field, paths: List[Path], elements: List[Dict[Path, Any]]) -> Block:
    paths = sorted(paths, key=Path.sort_key)
    index = {p: i for i, p in enumerate(paths)}
    if elements:
        mat = field_.zeros((len(elements), len(paths)))
        for i, e in enumerate(elements):
            for p, c in e.items():
                mat[i, index[p]] = field_.normalize(mat[i, index[p]] + c)
        reduced, pivots = _rref_array(field_, mat)
    else:
        reduced, pivots = field_.zeros((0, len(paths))), ()
    pivot_row = {c: i for i, c in enumerate(pivots)}
    basis = tuple(p for i, p in enumerate(paths) if i not in pivot_row)
    basis_cols = [index[p] for p in basis]
    reducer = field_.zeros((len(paths), len(basis)))
    for j, col in enumerate(basis_cols):
        reducer[col, j] = field_.coerce(1)
    for c, i in pivot_row.items():
        for j, col in enumerate(basis_cols):
            reducer[c, j] = field_.normalize(-reduced[i, col])
    return Block(
        paths=tuple(paths),
        basis=basis,
        reducer=reducer,
        index=index,
        basis_index={p: j for j, p in enumerate(basis)},
    )


def build_algebra(spec: AlgebraSpec) -> AlgebraTable:
    quiver = spec.quiver
    for r in spec.relations:
        check_relation(quiver, r, spec.mode)
    graded = spec.mode == "graded"
    top = spec.bound if graded else spec.bound - 1
    grouped: Dict[BlockKey, List[Path]] = defaultdict(list)
    for L in range(top + 1):
        for p in quiver.paths(L):
            key: BlockKey = (L, p.source, p.target) if graded else (p.source, p.target)
            grouped[key].append(p)
    ideal = _ideal_rows(quiver, spec.relations, spec.field, graded, spec.bound)
    blocks = {key: _eliminate(spec.field, paths, ideal.get(key, [])) for key, paths in grouped.items()}
    table = AlgebraTable(spec=spec, blocks=blocks)

    for r in spec.relations:
        if graded and r.min_length > spec.bound:
            continue
        residue: Dict[Path, Any] = {}
        for c, p in r.terms:
            if not graded and p.length >= spec.bound:
                continue
            for b, coeff in table.reduce(p).items():
                residue[b] = residue.get(b, 0) + c * coeff
        if any(spec.field.coerce(int(v) if not spec.field.is_rational else v) != 0 for v in residue.values()):
            raise ValidationFail(f"relation {r.label(quiver, spec.field)} does not vanish in the quotient")

    if not graded:
        nil = table.max_length() + 1
        table = AlgebraTable(spec=spec, blocks=blocks, nilpotency_index=nil)
        log.debug("built %s: dim %d, nilpotency index %d (declared N=%d)", spec.mode, table.dim(), nil, spec.bound)
    else:
        log.debug("built graded algebra: dims %s", table.layer_dims())
    return table
