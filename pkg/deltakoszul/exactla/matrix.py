"""Dense exact matrices.

Vectors are rows and a matrix acts by right multiplication, so ``v @ F @ G`` applies F first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from deltakoszul.common.errors import FieldMismatch
from deltakoszul.exactla.field import Field
from deltakoszul.exactla.scalar import Scalar


def _field_of_entries(rows: Sequence[Sequence[Any]], default: Field | None) -> Field:
    found: Field | None = None
    for row in rows:
        for x in row:
            if isinstance(x, Scalar):
                if found is not None and x.field != found:
                    raise FieldMismatch(f"matrix mixes {found.name} and {x.field.name} entries")
                found = x.field
    if found is not None and default is not None and found != default:
        raise FieldMismatch(f"entries over {found.name} in a {default.name} matrix")
    return found or default or Field.rationals()


@dataclass(frozen=True, eq=False)
class Mat:
    field: Field
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.data.ndim != 2:
            raise ValueError(f"matrix data must be 2-dimensional, got {self.data.shape}")

    # ------------------------------------------------------------ constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], field: Field | None = None, cols: int | None = None) -> "Mat":
        f = _field_of_entries(rows, field)
        if not rows:
            return cls(f, f.zeros((0, cols or 0)))
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError(f"ragged matrix rows: widths {sorted(widths)}")
        return cls(f, f.asarray([list(r) for r in rows], ndim=2))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, field.identity(n))

    @classmethod
    def wrap(cls, field: Field, data: np.ndarray) -> "Mat":
        return cls(field, field.normalize(data))

    # -------------------------------------------------------------- properties
    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> Tuple[Scalar, ...]:
        return tuple(Scalar(x, self.field) for x in self.data.reshape(-1))

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T.copy())

    def row(self, i: int) -> np.ndarray:
        return self.data[i].copy()

    def is_zero(self) -> bool:
        return self.field.is_zero(self.data)

    def to_lists(self) -> List[List[str]]:
        return [[self.field.format(x) for x in r] for r in self.data]

    # -------------------------------------------------------------- arithmetic
    def _check(self, other: "Mat") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} matrix combined with {other.field.name} matrix")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat.wrap(self.field, self.data + other.data)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat.wrap(self.field, self.data - other.data)

    def __neg__(self) -> "Mat":
        return Mat.wrap(self.field, -self.data)

    def scale(self, c: Any) -> "Mat":
        return Mat.wrap(self.field, self.data * self.field.coerce(c))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.data == other.data))

    def __hash__(self) -> int:
        return hash((self.field, self.shape, tuple(self.data.reshape(-1).tolist())))

    def __repr__(self) -> str:
        return f"Mat({self.field.name}, {self.to_lists()})"


def vstack(field: Field, blocks: Iterable[np.ndarray], cols: int) -> np.ndarray:
    parts = [b for b in blocks if b.shape[0]]
    if not parts:
        return field.zeros((0, cols))
    return np.vstack(parts)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: Mat
    pivots: Tuple[int, ...]
    rank: int


def _rref_array(field: Field, a: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Reduced row echelon form of ``a`` with zero rows dropped."""
    a = field.asarray(a, ndim=2)
    nrows, ncols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = field.normalize(a[r] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col != 0)
        if others.size:
            a[others] = field.normalize(a[others] - np.outer(col[others], a[r]))
        pivots.append(c)
        r += 1
    return a[:r].copy(), tuple(pivots)


def rref(m: Mat) -> RowReduceResult:
    reduced, pivots = _rref_array(m.field, m.data)
    # keep the original row count; zero rows sit at the bottom
    full = m.field.zeros(m.shape)
    full[: len(pivots)] = reduced
    return RowReduceResult(matrix=Mat(m.field, full), pivots=pivots, rank=len(pivots))


def rank(m: Mat) -> int:
    return len(_rref_array(m.field, m.data)[1])


def _nullspace_rows(field: Field, a: np.ndarray) -> np.ndarray:
    """Rows spanning {x : a @ x = 0}."""
    ncols = a.shape[1]
    reduced, pivots = _rref_array(field, a)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = field.unit(ncols, free)
        for i, c in enumerate(pivots):
            v[c] = -reduced[i, free]
        basis.append(field.normalize(v))
    if not basis:
        return field.zeros((0, ncols))
    return np.vstack(basis)


def kernel_basis(m: Mat) -> "Subspace":
    """{x : x·mᵀ = 0}, i.e. vectors of length ``m.cols`` annihilated by the rows of m."""
    from deltakoszul.exactla.subspace import Subspace

    return Subspace.span(m.field, m.cols, _nullspace_rows(m.field, m.data))


def left_kernel(m: Mat) -> "Subspace":
    """{v : v·m = 0}: the kernel of m as a map on row vectors."""
    from deltakoszul.exactla.subspace import Subspace

    return Subspace.span(m.field, m.rows, _nullspace_rows(m.field, m.data.T))


def solve(m: Mat, target: Any) -> Optional[np.ndarray]:
    """Some x with x·m = target, free coordinates set to zero; None when inconsistent."""
    field = m.field
    t = field.asarray(target, ndim=1)
    if t.shape[0] != m.cols:
        raise ValueError(f"target has length {t.shape[0]}, expected {m.cols}")
    aug = np.concatenate([m.data.T, t.reshape(-1, 1)], axis=1) if m.rows else t.reshape(-1, 1)
    reduced, pivots = _rref_array(field, aug)
    if pivots and pivots[-1] == m.rows:
        return None
    x = field.zeros(m.rows)
    for i, c in enumerate(pivots):
        x[c] = reduced[i, m.rows]
    return x
