"""Line-oriented input language.

    field Q                                  # or F<p>
    algebra graded D=6                       # or: algebra findim N=3
    vertex v
    arrow x: v -> v
    relation 1*x.x + -1/2*x.x.x
    module M
      space v deg 0 dim 1
      act x deg 0 = [[1]]
    module P = proj v shift 1
    module S = simple v deg 0
    map i: K -> M
      block v deg 1 = [[1]]
    ses xi = K -i-> M -p-> N

``seed``, ``suite``, ``nmax`` and ``expect`` lines carry counterexample metadata.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from deltakoszul.algebra import AlgebraSpec, AlgebraTable, Quiver, build_algebra, make_relation
from deltakoszul.cli.workspace import META_KEYS, Workspace
from deltakoszul.common.errors import DeltaKoszulError, ParseError
from deltakoszul.common.types import Key
from deltakoszul.config import get_settings
from deltakoszul.exactla import Field
from deltakoszul.horseshoe import make_ses
from deltakoszul.module import Module, Morphism, ProjectiveShape, projective, simple, validate, validate_morphism

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_NAME_RE = re.compile(rf"^{_NAME}$")
_ENTRY_RE = re.compile(r"^-?\d+(/\d+)?$")
_TERM_RE = re.compile(
    rf"\s*(?P<signs>(?:[+-]\s*)*)(?:(?P<coeff>\d+(?:/\d+)?)\s*\*\s*)?(?P<path>{_NAME}(?:\.{_NAME})*)\s*"
)
_SES_RE = re.compile(rf"^({_NAME})\s*=\s*({_NAME})\s*-({_NAME})->\s*({_NAME})\s*-({_NAME})->\s*({_NAME})$")


@dataclass(frozen=True)
class Token:
    text: str
    column: int  # 1-based


@dataclass
class Line:
    number: int
    raw: str
    tokens: List[Token]

    def error(self, message: str, token: Optional[int] = None, column: Optional[int] = None) -> ParseError:
        if column is None:
            column = self.tokens[token].column if token is not None and token < len(self.tokens) else 1
        return ParseError(self.number, column, message)

    def rest(self, token: int) -> Tuple[str, int]:
        """Raw text from token ``token`` to the end of the line, with its column."""
        if token >= len(self.tokens):
            return "", len(self.raw) + 1
        col = self.tokens[token].column
        return self.raw[col - 1 :].rstrip(), col


def _lines(text: str) -> List[Line]:
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        toks = [Token(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            out.append(Line(n, body, toks))
    return out


def _parse_int(line: Line, i: int, what: str) -> int:
    if i >= len(line.tokens):
        raise line.error(f"missing {what}", column=len(line.raw) + 1)
    tok = line.tokens[i].text
    if not re.fullmatch(r"-?\d+", tok):
        raise line.error(f"{what} must be an integer, got {tok!r}", i)
    return int(tok)


def parse_matrix(text: str, field_: Field, line: Line, column: int) -> np.ndarray:
    s = re.sub(r"\s+", "", text)
    if s in ("[]", "[[]]"):
        return field_.zeros((0, 0))
    if not (s.startswith("[[") and s.endswith("]]")):
        raise line.error("matrix must look like [[a,b],[c,d]]", column=column)
    rows = re.findall(r"\[([^\[\]]*)\]", s[1:-1])
    if "],[".join(rows) != s[2:-2]:
        raise line.error("matrix must look like [[a,b],[c,d]]", column=column)
    values = []
    for r in rows:
        entries = r.split(",") if r else []
        for e in entries:
            if not _ENTRY_RE.match(e):
                raise line.error(f"matrix entry {e!r} is not an exact integer or fraction", column=column)
        values.append([Fraction(e) for e in entries])
    if len({len(r) for r in values}) > 1:
        raise line.error("matrix rows have different lengths", column=column)
    try:
        return field_.asarray(values, ndim=2)
    except DeltaKoszulError as exc:
        raise line.error(str(exc), column=column) from None


class _Parser:
    def __init__(self, text: str, source: Optional[str]) -> None:
        self.lines = _lines(text)
        self.source = source
        self.field: Optional[Field] = None
        self.mode: Optional[str] = None
        self.bound: Optional[int] = None
        self.vertices: List[str] = []
        self.arrows: List[Tuple[str, str, str]] = []
        self.relation_lines: List[Line] = []
        self.quiver: Optional[Quiver] = None
        self.algebra: Optional[AlgebraTable] = None
        self.ws: Optional[Workspace] = None
        self.meta: Dict[str, str] = {}
        self.pos = 0
        self.algebra_line: Optional[Line] = None

    # ------------------------------------------------------------ algebra
    def _ensure_algebra(self, line: Line) -> Workspace:
        if self.ws is not None:
            return self.ws
        if self.mode is None:
            raise line.error("no algebra block")
        field_ = self.field or Field.parse(get_settings().FIELD)
        try:
            self.quiver = Quiver.build(self.vertices, self.arrows)
        except ValueError as exc:
            raise (self.algebra_line or line).error(str(exc)) from None
        relations = [self._relation(rl, field_) for rl in self.relation_lines]
        try:
            spec = AlgebraSpec(self.quiver, tuple(relations), self.mode, self.bound, field_)
            self.algebra = build_algebra(spec)
        except (ValueError, DeltaKoszulError) as exc:
            raise self.algebra_line.error(str(exc), 1) from None
        self.ws = Workspace(field=field_, algebra=self.algebra, meta=self.meta, source=self.source)
        return self.ws

    def _relation(self, line: Line, field_: Field):
        text, col = line.rest(1)
        if not text:
            raise line.error("empty relation", column=col)
        terms = []
        pos = 0
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            if not m or m.end() == pos:
                raise line.error("malformed relation term", column=col + pos)
            signs = m.group("signs").replace(" ", "")
            if terms and not signs:
                raise line.error("relation terms must be joined by + or -", column=col + m.start())
            c = Fraction(m.group("coeff") or 1) * (-1 if signs.count("-") % 2 else 1)
            terms.append((c, m.group("path"), col + m.start("path")))
            pos = m.end()
        try:
            return make_relation(self.quiver, field_, [(c, p) for c, p, _ in terms])
        except DeltaKoszulError as exc:
            bad = next((c for _, p, c in terms if _bad_path(self.quiver, p)), col)
            raise line.error(str(exc), column=bad) from None

    # ---------------------------------------------------------- statements
    def _unique(self, line: Line, i: int, name: str) -> None:
        if not _NAME_RE.match(name):
            raise line.error(f"invalid name {name!r}", i)
        if self.ws is not None and name in self.ws.names():
            raise line.error(f"name {name!r} is already defined", i)

    def _vertex(self, line: Line, i: int) -> int:
        name = line.tokens[i].text if i < len(line.tokens) else ""
        try:
            return self.quiver.vertex_index(name)
        except KeyError:
            raise line.error(f"unknown vertex {name!r}", i) from None

    def _module_ref(self, line: Line, name: str, column: int) -> Module:
        m = self.ws.modules.get(name)
        if m is None:
            raise line.error(f"unknown module {name!r}", column=column)
        return m

    def _key(self, line: Line, i: int) -> Tuple[Key, int]:
        """``<vertex> [deg <d>]`` starting at token i; returns the key and the next token index."""
        v = self._vertex(line, i)
        d = 0
        nxt = i + 1
        if nxt < len(line.tokens) and line.tokens[nxt].text == "deg":
            d = _parse_int(line, nxt + 1, "degree")
            nxt += 2
        if not self.algebra.graded and d != 0:
            raise line.error("finite-dimensional modules only use deg 0", nxt - 1)
        if self.algebra.graded and not 0 <= d <= self.algebra.bound:
            raise line.error(f"degree {d} outside 0..{self.algebra.bound}", nxt - 1)
        return (d, v), nxt

    def _block_lines(self, keyword: str) -> List[Line]:
        out = []
        while self.pos < len(self.lines) and self.lines[self.pos].tokens[0].text == keyword:
            out.append(self.lines[self.pos])
            self.pos += 1
        return out

    def _module(self, line: Line) -> None:
        ws = self._ensure_algebra(line)
        t = self.algebra
        if len(line.tokens) < 2:
            raise line.error("module needs a name", column=len(line.raw) + 1)
        name = line.tokens[1].text
        self._unique(line, 1, name)
        if len(line.tokens) > 2:
            ws.modules[name] = self._module_shorthand(line)
            return
        dims: Dict[Key, int] = {}
        space_lines = []
        while self.pos < len(self.lines) and self.lines[self.pos].tokens[0].text in ("space", "act"):
            space_lines.append(self.lines[self.pos])
            self.pos += 1
        for sl in space_lines:
            if sl.tokens[0].text != "space":
                continue
            key, nxt = self._key(sl, 1)
            if nxt >= len(sl.tokens) or sl.tokens[nxt].text != "dim":
                raise sl.error("expected 'dim <k>'", nxt)
            k = _parse_int(sl, nxt + 1, "dimension")
            if k < 0:
                raise sl.error("dimension must be non-negative", nxt + 1)
            if key in dims:
                raise sl.error("space declared twice", 1)
            if k:
                dims[key] = k
        action = {}
        frame = Module(algebra=t, dims=dims, bound=t.bound if t.graded else None)
        for al in space_lines:
            if al.tokens[0].text != "act":
                continue
            if len(al.tokens) < 2:
                raise al.error("act needs an arrow", column=len(al.raw) + 1)
            try:
                a = t.quiver.arrow_index(al.tokens[1].text)
            except KeyError:
                raise al.error(f"unknown arrow {al.tokens[1].text!r}", 1) from None
            d = 0
            nxt = 2
            if nxt < len(al.tokens) and al.tokens[nxt].text == "deg":
                d = _parse_int(al, nxt + 1, "degree")
                nxt += 2
            if nxt >= len(al.tokens) or al.tokens[nxt].text != "=":
                raise al.error("expected '= [[...]]'", nxt)
            if not t.graded and d != 0:
                raise al.error("finite-dimensional modules only use deg 0", nxt - 1)
            key = (d, t.quiver.arrows[a].source)
            nk = frame.next_key(a, key)
            text, col = al.rest(nxt + 1)
            arr = parse_matrix(text, self.field_or_default, al, col)
            want = (frame.dim(key), frame.dim(nk))
            if arr.size == 0 and 0 in want:
                continue
            if arr.shape != want:
                raise al.error(f"matrix has shape {arr.shape}, expected {want}", column=col)
            if not frame.in_bound(nk):
                raise al.error(f"arrow leaves the degree bound {t.bound}", 1)
            action[(a, key)] = arr
        m = Module(algebra=t, dims=dims, action=action, bound=t.bound if t.graded else None)
        v = validate(m)
        if v.failed:
            raise line.error(f"module {name} is not a representation: {_reason(v.witness)}", 1)
        ws.modules[name] = m

    @property
    def field_or_default(self) -> Field:
        return self.ws.field

    def _module_shorthand(self, line: Line) -> Module:
        t = self.algebra
        if line.tokens[2].text != "=" or len(line.tokens) < 5:
            raise line.error("expected '= proj <vertex> [shift <s>]' or '= simple <vertex> [deg <d>]'", 2)
        kind = line.tokens[3].text
        v = self._vertex(line, 4)
        extra = [tok.text for tok in line.tokens[5:]]
        try:
            if kind == "proj":
                s = 0
                if extra:
                    if extra[0] != "shift" or len(extra) != 2:
                        raise line.error("expected 'shift <s>'", 5)
                    s = _parse_int(line, 6, "shift")
                return projective(t, ProjectiveShape(((v, s),)))
            if kind == "simple":
                d = 0
                if extra:
                    if extra[0] != "deg" or len(extra) != 2:
                        raise line.error("expected 'deg <d>'", 5)
                    d = _parse_int(line, 6, "degree")
                return simple(t, v, d)
        except ParseError:
            raise
        except DeltaKoszulError as exc:
            raise line.error(str(exc), 3) from None
        raise line.error(f"unknown module constructor {kind!r}", 3)

    def _map(self, line: Line) -> None:
        ws = self._ensure_algebra(line)
        text, _ = line.rest(1)
        m = re.match(rf"^({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})$", text)
        if not m:
            raise line.error("expected 'map <name>: <module> -> <module>'", 1)
        name, dom_name, cod_name = m.groups()
        self._unique(line, 1, name)
        col = line.tokens[1].column
        dom = self._module_ref(line, dom_name, col + m.start(2))
        cod = self._module_ref(line, cod_name, col + m.start(3))
        blocks = {}
        for bl in self._block_lines("block"):
            key, nxt = self._key(bl, 1)
            if nxt >= len(bl.tokens) or bl.tokens[nxt].text != "=":
                raise bl.error("expected '= [[...]]'", nxt)
            text, mcol = bl.rest(nxt + 1)
            arr = parse_matrix(text, ws.field, bl, mcol)
            want = (dom.dim(key), cod.dim(key))
            if arr.size == 0 and 0 in want:
                continue
            if arr.shape != want:
                raise bl.error(f"matrix has shape {arr.shape}, expected {want}", column=mcol)
            blocks[key] = arr
        f = Morphism(dom, cod, blocks)
        v = validate_morphism(f)
        if v.failed:
            raise line.error(f"map {name} is not a module map: {_reason(v.witness)}", 1)
        ws.maps[name] = f
        ws.maps_ends[name] = (dom_name, cod_name)

    def _ses(self, line: Line) -> None:
        ws = self._ensure_algebra(line)
        text, col = line.rest(1)
        m = _SES_RE.match(text)
        if not m:
            raise line.error("expected 'ses <name> = K -i-> M -p-> N'", 1)
        name, k, i, mid, p, n = m.groups()
        self._unique(line, 1, name)
        mods = [self._module_ref(line, x, col + m.start(g)) for x, g in ((k, 2), (mid, 4), (n, 6))]
        maps = []
        for x, g, ends in ((i, 3, (k, mid)), (p, 5, (mid, n))):
            f = ws.maps.get(x)
            if f is None:
                raise line.error(f"unknown map {x!r}", column=col + m.start(g))
            if ws.maps_ends[x] != ends:
                raise line.error(f"map {x} goes {ws.maps_ends[x][0]} -> {ws.maps_ends[x][1]}", column=col + m.start(g))
            maps.append(f)
        try:
            ws.ses[name] = make_ses(mods[0], mods[1], mods[2], maps[0], maps[1])
        except DeltaKoszulError as exc:
            raise line.error(f"ses {name}: {exc}", 1) from None
        ws.ses_parts[name] = (k, i, mid, p, n)

    def run(self) -> Workspace:
        while self.pos < len(self.lines):
            line = self.lines[self.pos]
            self.pos += 1
            head = line.tokens[0].text
            if head in META_KEYS:
                if len(line.tokens) < 2:
                    raise line.error(f"{head} needs a value", column=len(line.raw) + 1)
                self.meta[head] = line.rest(1)[0]
            elif head == "field":
                if self.mode is not None:
                    raise line.error("field must come before the algebra", 0)
                try:
                    self.field = Field.parse(line.rest(1)[0])
                except ValueError as exc:
                    raise line.error(str(exc), 1) from None
            elif head == "algebra":
                self._algebra_header(line)
            elif head in ("vertex", "arrow", "relation"):
                if self.mode is None:
                    raise line.error("no algebra block", 0)
                if self.ws is not None:
                    raise line.error(f"{head} after the first module", 0)
                getattr(self, f"_{head}_line")(line)
            elif head == "module":
                self._module(line)
            elif head == "map":
                self._map(line)
            elif head == "ses":
                self._ses(line)
            else:
                raise line.error(f"unknown statement {head!r}", 0)
        if self.mode is None:
            last = self.lines[-1].number if self.lines else 1
            raise ParseError(last if self.lines else 1, 1, "no algebra block")
        return self._ensure_algebra(self.lines[-1])

    def _algebra_header(self, line: Line) -> None:
        if self.mode is not None:
            raise line.error("only one algebra per file", 0)
        if len(line.tokens) != 3:
            raise line.error("expected 'algebra graded D=<n>' or 'algebra findim N=<n>'", 0)
        mode, bound = line.tokens[1].text, line.tokens[2].text
        want = {"graded": "D", "findim": "N"}.get(mode)
        if want is None:
            raise line.error(f"unknown algebra mode {mode!r}", 1)
        m = re.fullmatch(rf"{want}=(\d+)", bound)
        if not m:
            raise line.error(f"expected {want}=<n>", 2)
        self.mode, self.bound = mode, int(m.group(1))
        self.algebra_line = line

    def _vertex_line(self, line: Line) -> None:
        if len(line.tokens) < 2:
            raise line.error("vertex needs a name", column=len(line.raw) + 1)
        for i, tok in enumerate(line.tokens[1:], start=1):
            if not _NAME_RE.match(tok.text):
                raise line.error(f"invalid vertex name {tok.text!r}", i)
            if tok.text in self.vertices:
                raise line.error(f"vertex {tok.text!r} declared twice", i)
            self.vertices.append(tok.text)

    def _arrow_line(self, line: Line) -> None:
        text, col = line.rest(1)
        m = re.match(rf"^({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})$", text)
        if not m:
            raise line.error("expected 'arrow <name>: <vertex> -> <vertex>'", 1)
        name, s, t = m.groups()
        for v, g in ((s, 2), (t, 3)):
            if v not in self.vertices:
                raise line.error(f"undeclared vertex {v!r}", column=col + m.start(g))
        if name in self.vertices or any(a[0] == name for a in self.arrows):
            raise line.error(f"name {name!r} is already used", 1)
        self.arrows.append((name, s, t))

    def _relation_line(self, line: Line) -> None:
        self.relation_lines.append(line)


def _bad_path(quiver: Quiver, text: str) -> bool:
    try:
        quiver.parse_path(text)
    except DeltaKoszulError:
        return True
    return False


def _reason(w: Dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in w.items())


def parse(text: str, source: Optional[str] = None) -> Workspace:
    """Parse an input file into a validated workspace; errors carry line and column."""
    return _Parser(text, source).run()
