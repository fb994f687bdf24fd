from __future__ import annotations

from pathlib import Path
from typing import Callable, Sequence, Tuple

import pytest

from deltakoszul.algebra import AlgebraSpec, AlgebraTable, Quiver, build_algebra, make_relation
from deltakoszul.exactla import Field

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
GOLDEN = Path(__file__).resolve().parent / "golden"

BuildAlgebra = Callable[..., AlgebraTable]


def build(
    vertices: Sequence[str],
    arrows: Sequence[Tuple[str, str, str]],
    relations: Sequence[Sequence[Tuple[object, str]]] = (),
    mode: str = "findim",
    bound: int = 3,
    field: str = "Q",
) -> AlgebraTable:
    q = Quiver.build(vertices, arrows)
    f = Field.parse(field)
    rels = tuple(make_relation(q, f, terms) for terms in relations)
    return build_algebra(AlgebraSpec(q, rels, mode, bound, f))


@pytest.fixture
def make_algebra() -> BuildAlgebra:
    return build


@pytest.fixture
def kx_graded() -> AlgebraTable:
    """k[x], graded, truncated at degree 6."""
    return build(["v"], [("x", "v", "v")], mode="graded", bound=6)


@pytest.fixture
def kx2() -> AlgebraTable:
    return build(["v"], [("x", "v", "v")], [[(1, "x.x")]], bound=3)


@pytest.fixture(params=[3, 4], ids=["N3", "N4"])
def kx3(request) -> AlgebraTable:
    """k[x]/(x³); at N=3 the relation is already a path of length N."""
    return build(["v"], [("x", "v", "v")], [[(1, "x.x.x")]], bound=request.param)


@pytest.fixture
def exterior() -> AlgebraTable:
    """k<x,y>/(x², y², xy+yx)."""
    return build(
        ["v"],
        [("x", "v", "v"), ("y", "v", "v")],
        [[(1, "x.x")], [(1, "y.y")], [(1, "x.y"), (1, "y.x")]],
        bound=3,
    )


@pytest.fixture(autouse=True)
def isolated_state(tmp_path, monkeypatch):
    """Journal and counterexamples go to a temporary directory."""
    monkeypatch.setenv("JOURNAL_PATH", str(tmp_path / "events.jsonl"))
    monkeypatch.setenv("COUNTEREXAMPLE_DIR", str(tmp_path / "counterexamples"))
    return tmp_path
