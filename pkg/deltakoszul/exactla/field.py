"""Ground fields: the rationals and prime fields F_p.

Elements of Q are ``fractions.Fraction`` held in numpy object arrays; elements of F_p are
``int64`` residues in ``[0, p)`` with ``p < 2^31``. Every array entering the kernel goes through
``Field.asarray`` so that the two representations never mix.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence, Tuple

import numpy as np

from deltakoszul.common.errors import DivisionByZero, FieldMismatch

_FIELD_RE = re.compile(r"^\s*(Q|F\s*(\d*))\s*$")

# F with no characteristic
DEFAULT_PRIME = 32003

# residues are int64: a product of two residues must fit, so p < 2^31
MAX_PRIME = 2**31 - 1
_INT64_MAX = 2**63 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    characteristic: int = 0  # 0 = rationals

    def __post_init__(self) -> None:
        if self.characteristic > MAX_PRIME:
            raise ValueError(f"F{self.characteristic}: characteristic must be at most {MAX_PRIME}")
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"F{self.characteristic}: characteristic must be prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "Field":
        m = _FIELD_RE.match(text)
        if not m:
            raise ValueError(f"unknown field {text!r} (expected Q or F<p>)")
        if m.group(2) is None:
            return cls.rationals()
        return cls.prime(int(m.group(2)) if m.group(2) else DEFAULT_PRIME)

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.is_rational else f"F{self.characteristic}"

    @property
    def dtype(self) -> Any:
        return object if self.is_rational else np.int64

    # ------------------------------------------------------------------ scalars
    def coerce(self, x: Any) -> Any:
        """Exact field element from an int, Fraction, literal string or Scalar."""
        from deltakoszul.exactla.scalar import Scalar

        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"scalar over {x.field.name} used in {self.name}")
            return x.value
        if isinstance(x, (bool, np.bool_)):
            raise TypeError("booleans are not field elements")
        if isinstance(x, (float, np.floating)):
            raise TypeError(f"inexact value {x!r}; use an integer or fraction literal")
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (int, np.integer)):
            x = int(x)
            return Fraction(x) if self.is_rational else x % self.characteristic
        if isinstance(x, Fraction):
            if self.is_rational:
                return x
            p = self.characteristic
            den = x.denominator % p
            if den == 0:
                raise DivisionByZero(f"denominator {x.denominator} vanishes in {self.name}")
            return (x.numerator % p) * pow(den, p - 2, p) % p
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    def inv(self, x: Any) -> Any:
        if x == 0:
            raise DivisionByZero(f"division by zero in {self.name}")
        if self.is_rational:
            return 1 / Fraction(x)
        p = self.characteristic
        return pow(int(x) % p, p - 2, p)

    def format(self, x: Any) -> str:
        if self.is_rational:
            return str(Fraction(x))
        return str(int(x) % self.characteristic)

    # ------------------------------------------------------------------- arrays
    def zeros(self, shape: int | Tuple[int, ...]) -> np.ndarray:
        if self.is_rational:
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.coerce(1)
        return a

    def unit(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.coerce(1)
        return v

    def asarray(self, values: Any, ndim: int | None = None) -> np.ndarray:
        if isinstance(values, np.ndarray) and values.dtype == self.dtype:
            arr = values.copy()
            if not self.is_rational:
                arr %= self.characteristic
        else:
            raw = np.array(values, dtype=object)
            arr = self.zeros(raw.shape)
            for idx, x in np.ndenumerate(raw):
                arr[idx] = self.coerce(x)
        if ndim is not None and arr.ndim != ndim:
            raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
        return arr

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        if self.is_rational:
            return arr
        return np.mod(arr, self.characteristic)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if self.is_rational:
            return self._sparse_matmul(a, b)
        p = self.characteristic
        if (p - 1) ** 2 * a.shape[1] > _INT64_MAX:
            # the int64 dot product would wrap; Python ints do not
            return np.mod(a.astype(object) @ b.astype(object), p).astype(np.int64)
        return np.mod(a @ b, p)

    def _sparse_matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Fraction product restricted to the rows, columns and inner indices that are not all zero."""
        out = self.zeros((a.shape[0], b.shape[1]))
        a_nz = a != 0
        b_nz = b != 0
        rows = np.flatnonzero(a_nz.any(axis=1))
        cols = np.flatnonzero(b_nz.any(axis=0))
        inner = np.flatnonzero(a_nz.any(axis=0) & b_nz.any(axis=1))
        if rows.size and cols.size and inner.size:
            out[np.ix_(rows, cols)] = a[np.ix_(rows, inner)] @ b[np.ix_(inner, cols)]
        return out

    def is_zero(self, arr: np.ndarray) -> bool:
        return not np.any(arr != 0) if arr.size else True

    def format_vector(self, v: Iterable[Any]) -> str:
        return "(" + ", ".join(self.format(x) for x in v) + ")"

    def random_array(self, rng: Any, shape: Sequence[int], spread: int = 3) -> np.ndarray:
        """Small random entries; ``rng`` is a ``random.Random``."""
        arr = self.zeros(tuple(shape))
        for idx in np.ndindex(*shape):
            arr[idx] = self.coerce(rng.randint(-spread, spread))
        return arr
