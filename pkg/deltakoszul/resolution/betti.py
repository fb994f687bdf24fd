from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import List, Tuple

import pandas as pd

from deltakoszul.resolution.minimal import BettiRow, Resolution


@dataclass(frozen=True)
class BettiTable:
    vertices: Tuple[str, ...]
    rows: Tuple[BettiRow, ...]
    terminated: bool = False
    truncated: bool = False

    def _entry(self, v: int, d: int) -> str:
        if len(self.vertices) == 1:
            return str(d)
        return f"{self.vertices[v]}@{d}"

    def text_lines(self) -> List[str]:
        out = []
        for n, row in enumerate(self.rows):
            cells = " ".join(self._entry(v, d) for v, d in sorted(row, key=lambda vd: (vd[1], vd[0])))
            out.append(f"{n}: {cells}".rstrip())
        return out

    def machine_lines(self) -> List[str]:
        out = []
        for n, row in enumerate(self.rows):
            counts = Counter(row)
            for (v, d), c in sorted(counts.items(), key=lambda kv: (kv[0][1], kv[0][0])):
                out.append(f"betti {n} {self.vertices[v]}:{d}x{c}")
        return out

    def to_frame(self) -> pd.DataFrame:
        records = []
        for n, row in enumerate(self.rows):
            for (v, d), c in Counter(row).items():
                records.append({"n": n, "vertex": self.vertices[v], "degree": d, "count": c})
        df = pd.DataFrame.from_records(records, columns=["n", "vertex", "degree", "count"])
        return df.sort_values(["n", "degree", "vertex"]).reset_index(drop=True)

    def degrees(self) -> List[List[int]]:
        return [sorted(d for _, d in row) for row in self.rows]


def betti_table(r: Resolution) -> BettiTable:
    return BettiTable(
        vertices=r.target.algebra.quiver.vertices,
        rows=r.betti,
        terminated=r.terminated,
        truncated=r.truncated,
    )
