from __future__ import annotations

import json

import pytest

from conftest import GOLDEN, SAMPLES
from deltakoszul.cli.parser import parse
from deltakoszul.module import ProjectiveShape, projective, semisimple_top, simple
from deltakoszul.resolution import betti_table, minimal_resolution, projective_dimension, verify_resolution


@pytest.fixture
def kx_file():
    return parse((SAMPLES / "kx_graded.dk").read_text(encoding="utf-8"))


@pytest.mark.parametrize(
    "name, degrees",
    [("K", [[1], [2]]), ("M", [[0], [2]]), ("N", [[0], [1]])],
)
def test_polynomial_ring_example(kx_file, name, degrees):
    r = minimal_resolution(kx_file.modules[name], 4)
    assert r.terminated and not r.truncated
    assert betti_table(r).degrees() == degrees
    assert projective_dimension(r).label() == "Finite(1)"
    assert verify_resolution(r).ok


def test_betti_rendering(kx_file):
    bt = betti_table(minimal_resolution(kx_file.modules["N"], 4))
    assert bt.text_lines() == ["0: 0", "1: 1"]
    assert bt.machine_lines() == ["betti 0 v:0x1", "betti 1 v:1x1"]
    df = bt.to_frame()
    assert list(df["degree"]) == [0, 1]


def test_truncated_polynomial_ring_matches_annihilator_oracle(kx3):
    golden = json.loads((GOLDEN / "kx3_annihilator.json").read_text(encoding="utf-8"))
    # ann(x) = (x²), ann(x²) = (x): syzygy generators climb by 1 then 2, alternately
    oracle = [0]
    while len(oracle) <= golden["n_max"]:
        oracle.append(oracle[-1] + golden["steps"][(len(oracle) - 1) % 2])
    assert oracle == golden["degrees"]

    r = minimal_resolution(simple(kx3, 0), golden["n_max"])
    assert [d for (d,) in betti_table(r).degrees()] == golden["degrees"]
    assert not r.terminated
    assert verify_resolution(r).ok
    assert projective_dimension(r).kind == "at_least"


def test_exterior_algebra_betti_numbers(exterior):
    r = minimal_resolution(semisimple_top(exterior), 6)
    for n, row in enumerate(r.betti):
        assert len(row) == n + 1
        assert {d for _, d in row} == {n}
    assert verify_resolution(r).ok


def test_exterior_algebra_brute_force_low_levels(exterior):
    # dim Ω^{n+1} = dim P_n - dim Ω^n with P_n = A^{n+1}
    r = minimal_resolution(semisimple_top(exterior), 3)
    omega_dim = 1
    for n, step in enumerate(r.steps):
        assert step.projective.total_dim() == 4 * (n + 1)
        assert step.kernel.total_dim() == step.projective.total_dim() - omega_dim
        omega_dim = step.kernel.total_dim()
        assert omega_dim == 2 * n + 3


def test_projective_has_projective_dimension_zero(kx3):
    r = minimal_resolution(projective(kx3, ProjectiveShape(((0, 0),))), 3)
    assert r.terminated
    assert projective_dimension(r).label() == "Finite(0)"


def test_graded_resolution_stops_at_the_bound(kx_graded):
    r = minimal_resolution(simple(kx_graded, 0, degree=5), 4)
    # the syzygy is generated in degree 6 = D, where no cover can be trusted
    assert r.truncated
    assert betti_table(r).degrees() == [[5], [6]]
    assert projective_dimension(r).kind == "undetermined"
