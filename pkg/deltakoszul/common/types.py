from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Optional, Tuple

Mode = Literal["graded", "findim"]

# (degree, vertex index). Finite-dimensional modules use degree 0 everywhere.
Key = Tuple[int, int]

Status = Literal["certified", "certified_up_to", "fails", "undetermined"]


@dataclass(frozen=True)
class Verdict:
    status: Status
    bound: Optional[int] = None
    witness: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def certified(cls) -> "Verdict":
        return cls("certified")

    @classmethod
    def certified_up_to(cls, bound: int) -> "Verdict":
        return cls("certified_up_to", bound=bound)

    @classmethod
    def fails(cls, **witness: Any) -> "Verdict":
        return cls("fails", witness=dict(witness))

    @classmethod
    def undetermined(cls, bound: Optional[int] = None, **witness: Any) -> "Verdict":
        return cls("undetermined", bound=bound, witness=dict(witness))

    @property
    def ok(self) -> bool:
        return self.status in ("certified", "certified_up_to")

    @property
    def failed(self) -> bool:
        return self.status == "fails"

    @property
    def determined(self) -> bool:
        return self.status != "undetermined"

    def label(self) -> str:
        if self.status == "certified_up_to":
            return f"certified up to {self.bound}"
        if self.status == "undetermined" and self.bound is not None:
            return f"undetermined (bound {self.bound})"
        return self.status


def exit_code(verdict: Verdict) -> int:
    """0 certified, 1 fails, 2 undetermined."""
    if verdict.ok:
        return 0
    if verdict.failed:
        return 1
    return 2
