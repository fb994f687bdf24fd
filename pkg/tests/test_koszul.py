from __future__ import annotations

import pytest

from conftest import SAMPLES, build
from deltakoszul.cli.parser import parse
from deltakoszul.common.errors import BadProfile, ModeMismatch, ProfileExhausted
from deltakoszul.koszul import (
    DeltaProfile,
    certify_algebra,
    certify_delta_koszul,
    check_criteria,
    cross_check_betti_criteria,
    delta_eval,
    infer_delta,
)
from deltakoszul.module import semisimple_top, simple
from deltakoszul.resolution import minimal_resolution


@pytest.mark.parametrize("d", [3, 4, 5])
def test_dkoszul_closed_form(d):
    p = DeltaProfile.dkoszul(d)
    for n in range(51):
        want = n * d // 2 if n % 2 == 0 else (n - 1) * d // 2 + 1
        assert delta_eval(p, n) == want


@pytest.mark.parametrize("d, q", [(4, 2), (6, 3)])
def test_piecewise_closed_form(d, q):
    p = DeltaProfile.piecewise(d, q)
    for n in range(51):
        assert delta_eval(p, n) == (n // q) * d + n % q


def test_profile_identities():
    for n in range(51):
        assert delta_eval(DeltaProfile.koszul(), n) == n == delta_eval(DeltaProfile.dkoszul(2), n)
        for d in (3, 4, 5):
            assert delta_eval(DeltaProfile.piecewise(d, 2), n) == delta_eval(DeltaProfile.dkoszul(d), n)


def test_profile_parsing():
    assert DeltaProfile.parse("koszul") == DeltaProfile.koszul()
    assert DeltaProfile.parse("dkoszul:3") == DeltaProfile.dkoszul(3)
    assert DeltaProfile.parse("piecewise:6,3").label() == "piecewise:6,3"
    assert DeltaProfile.parse("custom:0,2,5").values(3) == [0, 2, 5, None]
    for bad in ("dkoszul:1", "piecewise:2,3", "custom:0,0", "fancy", "dkoszul:x"):
        with pytest.raises(BadProfile):
            DeltaProfile.parse(bad)
    with pytest.raises(ProfileExhausted):
        delta_eval(DeltaProfile.custom([0, 1]), 2)


def test_truncated_polynomial_ring_is_3_koszul(kx3):
    cert = certify_algebra(kx3, DeltaProfile.dkoszul(3), 6)
    assert cert.method == "criteria"
    assert cert.verdict.status == "certified_up_to"
    assert [d for ((_, d),) in cert.betti] == [0, 1, 3, 4, 6, 7, 9]
    assert cert.companion is not None and cert.companion.verdict.ok


def test_truncated_polynomial_ring_is_not_koszul(kx3):
    cert = certify_algebra(kx3, DeltaProfile.koszul(), 4)
    assert cert.verdict.failed
    assert cert.first("fails") == 1
    assert cert.levels[1].witness["condition"] == "radical"


def test_exterior_algebra_is_koszul(exterior):
    cert = certify_algebra(exterior, DeltaProfile.koszul(), 6)
    assert cert.verdict.ok
    assert all(lv.status == "holds" for lv in cert.levels)


def test_infer_delta_reads_the_betti_table(kx3):
    p = infer_delta(minimal_resolution(simple(kx3, 0), 6))
    assert p is not None and p.kind == "inferred"
    assert p.values(6) == [0, 1, 3, 4, 6, 7, 9]


def test_graded_betti_test_on_the_polynomial_ring():
    ws = parse((SAMPLES / "kx_graded.dk").read_text(encoding="utf-8"))
    n = certify_delta_koszul(ws.modules["N"], DeltaProfile.koszul(), 4, module_id="N")
    assert n.verdict.status == "certified"
    lines = n.machine_lines()
    assert lines[0] == "profile koszul 0 1 2 3 4 5"
    assert lines[-1] == "verdict certified"

    k = certify_delta_koszul(ws.modules["K"], DeltaProfile.koszul(), 4)
    assert k.verdict.failed and k.first("fails") == 0


def test_betti_test_needs_a_graded_module(kx2):
    with pytest.raises(ModeMismatch):
        certify_delta_koszul(simple(kx2, 0), DeltaProfile.koszul())


def test_betti_and_criteria_agree_until_the_degree_bound():
    t = build(["v"], [("x", "v", "v")], [[(1, "x.x.x")]], mode="graded", bound=6)
    k = semisimple_top(t)
    p = DeltaProfile.dkoszul(3)
    cert = certify_delta_koszul(k, p, 6)
    assert [lv.status for lv in cert.levels[:5]] == ["holds"] * 4 + ["undetermined"]
    assert cert.verdict.status == "undetermined"

    cc = cross_check_betti_criteria(k, p, 6)
    assert cc.verdict.status == "certified_up_to"
    assert cc.verdict.bound == 3


def test_criteria_on_projective_modules_hold_vacuously(kx2):
    from deltakoszul.module import ProjectiveShape, projective

    cert = check_criteria(projective(kx2, ProjectiveShape(((0, 0),))), DeltaProfile.koszul(), 3)
    assert cert.verdict.status == "certified"
