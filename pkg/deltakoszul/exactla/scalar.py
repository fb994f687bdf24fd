from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from deltakoszul.common.errors import DivisionByZero, FieldMismatch
from deltakoszul.exactla.field import Field


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; used at API boundaries."""

    value: Any
    field: Field

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _other(self, other: Any) -> Any:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
            return other.value
        return self.field.coerce(other)

    def _wrap(self, value: Any) -> "Scalar":
        if not self.field.is_rational:
            value = value % self.field.characteristic
        return Scalar(value, self.field)

    def __add__(self, other: Any) -> "Scalar":
        return self._wrap(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        return self._wrap(self.value - self._other(other))

    def __rsub__(self, other: Any) -> "Scalar":
        return self._wrap(self._other(other) - self.value)

    def __mul__(self, other: Any) -> "Scalar":
        return self._wrap(self.value * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Scalar":
        d = self._other(other)
        if d == 0:
            raise DivisionByZero(f"division by zero in {self.field.name}")
        return self._wrap(self.value * self.field.inv(d))

    def __neg__(self) -> "Scalar":
        return self._wrap(-self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return False

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.field.format(self.value)
