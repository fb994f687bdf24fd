from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Literal, Optional, Sequence, Tuple

from deltakoszul.common.errors import BadRelation
from deltakoszul.exactla import Field

AlgebraMode = Literal["graded", "findim"]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        clash = set(names) & set(self.vertices)
        if clash:
            raise ValueError(f"names used for both a vertex and an arrow: {sorted(clash)}")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise ValueError(f"arrow {a.name} references an undeclared vertex")

    @classmethod
    def build(cls, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]] = ()) -> "Quiver":
        index = {v: i for i, v in enumerate(vertices)}
        out = []
        for name, s, t in arrows:
            if s not in index or t not in index:
                raise ValueError(f"arrow {name}: undeclared vertex {s if s not in index else t!r}")
            out.append(Arrow(name, index[s], index[t]))
        return cls(tuple(vertices), tuple(out))

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise KeyError(f"unknown arrow {name!r}")

    def arrows_from(self, v: int) -> List[int]:
        return [i for i, a in enumerate(self.arrows) if a.source == v]

    def paths(self, length: int, source: Optional[int] = None) -> Iterator["Path"]:
        """All paths of the given length, in lexicographic order of arrow indices."""
        starts = range(len(self.vertices)) if source is None else [source]
        for v in starts:
            yield from self._extend(Path.trivial(v), length)

    def _extend(self, p: "Path", remaining: int) -> Iterator["Path"]:
        if remaining == 0:
            yield p
            return
        for i in self.arrows_from(p.target):
            yield from self._extend(p.then_arrow(i, self.arrows[i].target), remaining - 1)

    def parse_path(self, text: str) -> "Path":
        """``a.b.c`` (a first) or a vertex name for its idempotent."""
        text = text.strip()
        if text in self.vertices:
            return Path.trivial(self.vertex_index(text))
        steps = [s.strip() for s in text.split(".")]
        p: Optional[Path] = None
        for s in steps:
            try:
                i = self.arrow_index(s)
            except KeyError:
                raise BadRelation(f"unknown arrow {s!r} in path {text!r}") from None
            a = self.arrows[i]
            if p is None:
                p = Path(a.source, a.target, (i,))
            elif p.target != a.source:
                raise BadRelation(f"path {text!r} does not compose at {s!r}")
            else:
                p = p.then_arrow(i, a.target)
        assert p is not None
        return p


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: Tuple[int, ...] = ()

    @classmethod
    def trivial(cls, v: int) -> "Path":
        return cls(v, v, ())

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self) -> Tuple[int, Tuple[int, ...], int]:
        return (self.length, self.arrows, self.source)

    def then_arrow(self, arrow: int, target: int) -> "Path":
        return Path(self.source, target, self.arrows + (arrow,))

    def then(self, other: "Path") -> Optional["Path"]:
        """Concatenation self·other (self first); None when the endpoints do not meet."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def label(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e_{quiver.vertices[self.source]}"
        return ".".join(quiver.arrows[i].name for i in self.arrows)


@dataclass(frozen=True)
class Relation:
    terms: Tuple[Tuple[Any, Path], ...]

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    @property
    def min_length(self) -> int:
        return min(p.length for _, p in self.terms)

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(sorted({p.length for _, p in self.terms}))

    def label(self, quiver: Quiver, field_: Field) -> str:
        parts = []
        for c, p in self.terms:
            parts.append(f"{field_.format(c)}*{p.label(quiver)}")
        return " + ".join(parts)


@dataclass(frozen=True)
class AlgebraSpec:
    quiver: Quiver
    relations: Tuple[Relation, ...]
    mode: AlgebraMode
    bound: int  # D in graded mode, N in finite-dimensional mode
    field: Field = field(default_factory=Field.rationals)

    def __post_init__(self) -> None:
        if self.mode not in ("graded", "findim"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.bound < 2:
            raise ValueError(f"{'D' if self.mode == 'graded' else 'N'} must be at least 2")
        for r in self.relations:
            check_relation(self.quiver, r, self.mode)


def check_relation(quiver: Quiver, r: Relation, mode: AlgebraMode) -> None:
    if not r.terms:
        raise BadRelation("empty relation")
    n_arrows = len(quiver.arrows)
    for _, p in r.terms:
        if any(not (0 <= i < n_arrows) for i in p.arrows):
            raise BadRelation("relation references an unknown arrow")
        if (p.source, p.target) != (r.source, r.target):
            raise BadRelation("relation terms are not parallel paths")
        if p.length < 2:
            raise BadRelation(f"relation term of length {p.length}; terms need length at least 2")
    if mode == "graded" and len(r.lengths) != 1:
        raise BadRelation("graded relations must be homogeneous")


def make_relation(quiver: Quiver, field_: Field, terms: Sequence[Tuple[Any, str]]) -> Relation:
    """Build a relation from (coefficient, "a.b") pairs, merging repeated paths."""
    acc: Dict[Path, Any] = {}
    for c, text in terms:
        p = quiver.parse_path(text)
        acc[p] = field_.coerce(c) + acc.get(p, field_.coerce(0))
        if not field_.is_rational:
            acc[p] %= field_.characteristic
    kept = tuple((c, p) for p, c in sorted(acc.items(), key=lambda kv: kv[0].sort_key()) if c != 0)
    if not kept:
        raise BadRelation("relation is identically zero")
    return Relation(kept)
