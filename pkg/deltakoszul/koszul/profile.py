from __future__ import annotations

from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

from deltakoszul.common.errors import BadProfile, ProfileExhausted
from deltakoszul.resolution import Resolution

ProfileKind = Literal["koszul", "dkoszul", "piecewise", "custom", "inferred"]


@dataclass(frozen=True)
class DeltaProfile:
    kind: ProfileKind
    d: int = 2
    p: int = 2
    table: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "dkoszul" and self.d < 2:
            raise BadProfile(f"d-Koszul needs d >= 2, got {self.d}")
        if self.kind == "piecewise" and not (self.d >= self.p >= 2):
            raise BadProfile(f"piecewise-Koszul needs d >= p >= 2, got d={self.d}, p={self.p}")
        if self.kind in ("custom", "inferred"):
            if any(b <= a for a, b in zip(self.table, self.table[1:])):
                raise BadProfile(f"profile {list(self.table)} is not strictly increasing")
            if any(x < 0 for x in self.table):
                raise BadProfile("profile values must be non-negative")

    @classmethod
    def koszul(cls) -> "DeltaProfile":
        return cls("koszul")

    @classmethod
    def dkoszul(cls, d: int) -> "DeltaProfile":
        return cls("dkoszul", d=d)

    @classmethod
    def piecewise(cls, d: int, p: int) -> "DeltaProfile":
        return cls("piecewise", d=d, p=p)

    @classmethod
    def custom(cls, values: Sequence[int], inferred: bool = False) -> "DeltaProfile":
        return cls("inferred" if inferred else "custom", table=tuple(int(x) for x in values))

    @classmethod
    def parse(cls, text: str) -> "DeltaProfile":
        """``koszul``, ``dkoszul:3``, ``piecewise:4,2`` or ``custom:0,1,3``."""
        name, _, args = text.strip().partition(":")
        name = name.strip().lower()
        try:
            nums = [int(x) for x in args.split(",") if x.strip()] if args else []
        except ValueError:
            raise BadProfile(f"profile arguments must be integers: {text!r}") from None
        if name == "koszul" and not nums:
            return cls.koszul()
        if name == "dkoszul" and len(nums) == 1:
            return cls.dkoszul(nums[0])
        if name == "piecewise" and len(nums) == 2:
            return cls.piecewise(nums[0], nums[1])
        if name == "custom" and nums:
            return cls.custom(nums)
        raise BadProfile(f"unknown profile {text!r}")

    def __call__(self, n: int) -> int:
        return delta_eval(self, n)

    def values(self, upto: int) -> List[Optional[int]]:
        out: List[Optional[int]] = []
        for n in range(upto + 1):
            try:
                out.append(delta_eval(self, n))
            except ProfileExhausted:
                out.append(None)
        return out

    def label(self) -> str:
        if self.kind == "koszul":
            return "koszul"
        if self.kind == "dkoszul":
            return f"dkoszul:{self.d}"
        if self.kind == "piecewise":
            return f"piecewise:{self.d},{self.p}"
        return "custom:" + ",".join(str(x) for x in self.table)


def delta_eval(p: DeltaProfile, n: int) -> int:
    if n < 0:
        raise ValueError("δ is defined on n >= 0")
    if p.kind == "koszul":
        return n
    if p.kind == "dkoszul":
        if n % 2 == 0:
            return n * p.d // 2
        return (n - 1) * p.d // 2 + 1
    if p.kind == "piecewise":
        r = n % p.p
        return (n - r) * p.d // p.p + r
    if n >= len(p.table):
        raise ProfileExhausted(f"profile table has {len(p.table)} entries, level {n} requested", level=n)
    return p.table[n]


def infer_delta(r: Resolution) -> Optional[DeltaProfile]:
    """The profile read off the Betti table, when every level sits in a single degree."""
    if not r.betti:
        return None
    degs = []
    for row in r.betti:
        ds = {d for _, d in row}
        if len(ds) != 1:
            return None
        degs.append(ds.pop())
    if any(b <= a for a, b in zip(degs, degs[1:])):
        return None
    return DeltaProfile.custom(degs, inferred=True)
