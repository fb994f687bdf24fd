from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional, Tuple

import numpy as np

from deltakoszul.common.errors import AmbientMismatch, FieldMismatch
from deltakoszul.exactla.field import Field
from deltakoszul.exactla.matrix import Mat, _nullspace_rows, _rref_array


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^n stored by its reduced row echelon basis."""

    field: Field
    ambient_dim: int
    rows: np.ndarray
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Any) -> "Subspace":
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            arr = vectors
        else:
            vecs = [field.asarray(v, ndim=1) for v in vectors]
            arr = np.vstack(vecs) if vecs else field.zeros((0, ambient_dim))
        if arr.shape[1] != ambient_dim:
            raise AmbientMismatch(f"vectors of length {arr.shape[1]} in ambient dimension {ambient_dim}")
        reduced, pivots = _rref_array(field, arr)
        return cls(field, ambient_dim, reduced, pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, field.zeros((0, ambient_dim)), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, field.identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> Mat:
        return Mat(self.field, self.rows.copy())

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _same(self, other: "Subspace") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} subspace vs {other.field.name} subspace")
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Remainder of ``v`` after clearing the pivot coordinates; zero iff v lies in the span."""
        r = self.field.asarray(v, ndim=1)
        if r.shape[0] != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {r.shape[0]} in ambient dimension {self.ambient_dim}")
        for i, c in enumerate(self.pivots):
            if r[c] != 0:
                r = self.field.normalize(r - r[c] * self.rows[i])
        return r

    def contains(self, v: Any) -> bool:
        return self.field.is_zero(self.reduce(v))

    def coordinates(self, v: Any) -> Optional[np.ndarray]:
        """Coordinates of v in the canonical basis, or None when v is outside."""
        vv = self.field.asarray(v, ndim=1)
        if not self.contains(vv):
            return None
        return vv[list(self.pivots)].copy() if self.pivots else self.field.zeros(0)

    def complement_coordinates(self) -> Tuple[int, ...]:
        """Non-pivot coordinates; the matching unit vectors span a complement."""
        ps = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in ps)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return Subspace.span(self.field, self.ambient_dim, np.vstack([self.rows, other.rows]))

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return subspace_leq(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and bool(np.all(self.rows == other.rows))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.pivots, tuple(self.rows.reshape(-1).tolist())))

    def image(self, m: Mat) -> "Subspace":
        """Image of this subspace under v ↦ v·m."""
        if m.rows != self.ambient_dim:
            raise AmbientMismatch(f"map from dimension {m.rows} applied to ambient {self.ambient_dim}")
        return Subspace.span(self.field, m.cols, self.field.matmul(self.rows, m.data))

    def vectors(self) -> Iterable[np.ndarray]:
        for i in range(self.dim):
            yield self.rows[i].copy()


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._same(b)
    if a.is_zero() or b.is_zero():
        return Subspace.zero(a.field, a.ambient_dim)
    stacked = np.vstack([a.rows, b.rows])
    # c = (alpha, beta) with alpha·A + beta·B = 0 gives alpha·A in both spaces
    rel = _nullspace_rows(a.field, stacked.T)
    if rel.shape[0] == 0:
        return Subspace.zero(a.field, a.ambient_dim)
    alphas = rel[:, : a.dim]
    return Subspace.span(a.field, a.ambient_dim, a.field.matmul(alphas, a.rows))


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    a._same(b)
    return all(b.contains(v) for v in a.vectors())
