from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, List, Optional

from rich.console import Console
from rich.table import Table
from rich.text import Text

from deltakoszul.common.types import Verdict
from deltakoszul.config import get_settings
from deltakoszul.horseshoe import HorseshoeDiagram
from deltakoszul.koszul import KoszulCertificate
from deltakoszul.resolution import BettiTable


@dataclass
class Report:
    """What a command produced: tables for people, tagged lines for scripts."""

    title: str
    verdict: Verdict
    tables: List[Table] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    machine: List[str] = field(default_factory=list)
    raw: Optional[str] = None  # printed verbatim instead of the report (dump)


def make_console(file: Optional[IO[str]] = None, width: Optional[int] = None) -> Console:
    # fixed width, no colour, no markup guessing: identical input gives identical bytes
    return Console(
        file=file,
        width=width or get_settings().CONSOLE_WIDTH,
        color_system=None,
        force_terminal=False,
        highlight=False,
        emoji=False,
        soft_wrap=True,
    )


def _table(title: str, *columns: str) -> Table:
    t = Table(title=title, title_justify="left", show_lines=False)
    for c in columns:
        t.add_column(c)
    return t


def _row(t: Table, *cells: str) -> None:
    t.add_row(*(Text(c) for c in cells))


def betti_rich_table(bt: BettiTable, title: str = "Betti table") -> Table:
    t = _table(title, "n", "vertex", "degree", "count")
    for rec in bt.to_frame().itertuples(index=False):
        _row(t, str(rec.n), rec.vertex, str(rec.degree), str(rec.count))
    return t


def certificate_table(cert: KoszulCertificate) -> Table:
    t = _table(f"{cert.module_id or 'module'}: {cert.profile.label()} ({cert.method})", "level", "δ", "status", "witness")
    vals = cert.profile.values(cert.n_max + 1)
    for lv in cert.levels:
        delta = "-" if lv.n < 0 else ("?" if vals[lv.n] is None else str(vals[lv.n]))
        w = " ".join(f"{k}={v}" for k, v in sorted(lv.witness.items()))
        _row(t, str(lv.n), delta, lv.status, w)
    return t


def diagram_table(d: HorseshoeDiagram) -> Table:
    vs = d.ses.algebra.quiver.vertices
    title = "classic horseshoe" if d.classic else "minimal horseshoe"
    t = _table(title, "level", "P (from K)", "L (middle)", "Q (from N)", "radical", "commutes", "minimal")
    for lv in d.levels:
        rad = "-" if lv.radical is None else ("holds" if lv.radical.holds else "fails")
        _row(
            t,
            str(lv.n),
            lv.p_shape.label(vs),
            lv.l_shape.label(vs),
            lv.q_shape.label(vs),
            rad,
            "yes" if lv.commutes else "no",
            "yes" if lv.defect is None else "no",
        )
    return t


def lines_table(title: str, lines: List[str]) -> Table:
    t = Table(title=title, title_justify="left", show_header=False)
    t.add_column("")
    for line in lines:
        _row(t, line)
    return t


def render(report: Report, console: Console, machine: bool = False) -> None:
    if report.raw is not None:
        console.file.write(report.raw)
        return
    if machine:
        for line in report.machine:
            console.print(line, markup=False)
        console.print(f"verdict {report.verdict.status}", markup=False)
        return
    console.print(report.title, markup=False)
    for t in report.tables:
        console.print(t)
    for line in report.notes:
        console.print(line, markup=False)
    console.print(f"verdict: {report.verdict.label()}", markup=False)
