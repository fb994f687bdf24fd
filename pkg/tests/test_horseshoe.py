from __future__ import annotations

from collections import Counter

import pytest

from conftest import SAMPLES
from deltakoszul.cli.parser import parse
from deltakoszul.common.errors import (
    ConditionFails,
    MHLNotEstablished,
    ModeMismatch,
    NotInjective,
    NotSurjective,
    PreconditionNotCertified,
)
from deltakoszul.horseshoe import (
    audit_extension_closure,
    audit_lemma32,
    audit_theorem_a,
    audit_theorem_c,
    audit_theorem_d,
    build_minimal_horseshoe,
    classic_horseshoe,
    lemma33_conditions,
    make_ses,
    radical_condition,
    split_ses,
    syzygy_ses,
)
from deltakoszul.koszul import DeltaProfile
from deltakoszul.module import Morphism, ProjectiveShape, projective, simple

V = (0, 0)


def _sample(name):
    return parse((SAMPLES / name).read_text(encoding="utf-8")).ses["xi"]


@pytest.fixture
def graded_xi():
    return _sample("kx_graded.dk")


@pytest.fixture
def findim_xi():
    return _sample("kx2_findim.dk")


def test_radical_condition_fails_on_the_polynomial_example(graded_xi):
    rc = radical_condition(graded_xi)
    assert not rc.holds
    assert rc.witness() == {"degree": 1, "vertex": 0, "dim_jk": 0, "dim_k_jm": 1}
    assert rc.describe(["v"]) == "radical condition FAILS at (degree 1, v): dim JK=0 < dim K∩JM=1"


def test_minimal_horseshoe_stops_where_the_condition_fails(graded_xi):
    d = build_minimal_horseshoe(graded_xi, 4)
    assert not d.succeeded
    assert d.failure[0] == 0
    assert d.verdict().failed
    assert d.machine_lines() == ["mhl 0 fail degree=1 vertex=0 dim_jk=0 dim_k_jm=1"]


def test_classic_horseshoe_reports_a_non_minimal_middle(graded_xi):
    d = classic_horseshoe(graded_xi, 2)
    first = d.levels[0]
    assert first.l_shape.counter() == Counter({(0, 0): 1, (0, 1): 1})
    assert first.defect is not None and first.defect["degree"] == 1
    assert d.verdict().failed and d.verdict().witness["level"] == 0
    assert not d.middle.minimal


def test_findim_example(findim_xi):
    assert not radical_condition(findim_xi).holds
    d = build_minimal_horseshoe(findim_xi, 3)
    assert d.verdict().failed
    # L_0 = A is the cover of N alone although P_0 ≠ 0
    lv = d.levels[0]
    assert len(lv.p_shape) == 1
    assert lv.l_shape.counter() == lv.q_shape.counter()
    with pytest.raises(ConditionFails):
        syzygy_ses(findim_xi)
    assert classic_horseshoe(findim_xi, 1).levels[0].defect["vertex"] == "v"


def test_split_sequences_have_a_minimal_horseshoe(kx2):
    s = split_ses(simple(kx2, 0), simple(kx2, 0))
    assert radical_condition(s).holds
    d = build_minimal_horseshoe(s, 3)
    assert d.succeeded
    assert d.verdict().status == "certified_up_to"
    assert all(len(row) == 2 for row in d.middle.betti)
    assert all(lv.defect is None for lv in d.levels)
    omega = syzygy_ses(s)
    assert omega.dims() == "1 -> 2 -> 1"


def test_make_ses_rejects_non_exact_data(kx2):
    f = kx2.field
    a = projective(kx2, ProjectiveShape((V,)))
    s = simple(kx2, 0)
    i = Morphism(s, a, {V: f.asarray([[0, 1]], ndim=2)})
    p = Morphism(a, s, {V: f.asarray([[1], [0]], ndim=2)})
    assert make_ses(s, a, s, i, p).dims() == "1 -> 2 -> 1"
    with pytest.raises(NotInjective):
        make_ses(s, a, s, Morphism(s, a, {V: f.zeros((1, 2))}), p)
    with pytest.raises(NotSurjective):
        make_ses(s, a, s, i, Morphism(a, s, {V: f.zeros((2, 1))}))


@pytest.mark.parametrize("sample", ["kx_graded.dk", "kx2_findim.dk"])
def test_equivalent_radical_conditions_agree_on_failure(sample):
    rep = lemma33_conditions(_sample(sample), 3)
    assert rep.conditions == (False, False, False, False, False)
    assert rep.agree
    assert rep.verdict().ok
    assert rep.lines()[0] == "cond radical false"


def test_equivalent_radical_conditions_agree_on_split_sequences(exterior):
    s = split_ses(simple(exterior, 0), simple(exterior, 0))
    rep = lemma33_conditions(s, 2, profile=DeltaProfile.koszul())
    assert rep.conditions == (True, True, True, True, True)
    assert rep.gated and rep.agree


def test_theorem_a_on_koszul_inputs(exterior):
    s = split_ses(simple(exterior, 0), simple(exterior, 0))
    res = audit_theorem_a(s, DeltaProfile.koszul(), 3)
    assert res.verdict.status == "certified_up_to"
    assert res.facts == {"radical_condition": True, "mhl": True}


def test_theorem_a_needs_certified_inputs(kx3):
    s = split_ses(simple(kx3, 0), simple(kx3, 0))
    with pytest.raises(PreconditionNotCertified):
        audit_theorem_a(s, DeltaProfile.koszul(), 3)


def test_theorem_c_on_projectives(kx3):
    a = projective(kx3, ProjectiveShape((V,)))
    res = audit_theorem_c(split_ses(a, a), 3)
    assert res.verdict.status == "certified"
    assert res.facts == {"pd(K)": "Finite(0)", "pd(M)": "Finite(0)", "pd(N)": "Finite(0)"}


def test_theorem_c_needs_the_minimal_horseshoe(findim_xi):
    with pytest.raises(MHLNotEstablished):
        audit_theorem_c(findim_xi, 3)


def test_theorem_d(kx2, graded_xi):
    s = split_ses(simple(kx2, 0), simple(kx2, 0))
    res = audit_theorem_d(s, 3)
    assert res.verdict.ok
    assert res.facts["part2"] == "checked"
    with pytest.raises(ModeMismatch):
        audit_theorem_d(graded_xi, 3)


def test_extension_closure(kx2, findim_xi):
    s = split_ses(simple(kx2, 0), simple(kx2, 0))
    assert audit_extension_closure(s, 3).verdict.ok
    assert audit_extension_closure(findim_xi, 3).verdict.status == "undetermined"


def test_betti_splitting(kx2, findim_xi):
    s = split_ses(simple(kx2, 0), simple(kx2, 0))
    res = audit_lemma32(s, 3)
    assert res.verdict.status == "certified_up_to"
    assert res.facts["compared_levels"] == 4

    # both sides fail at level 0: A has one generator, K and N one each
    res = audit_lemma32(findim_xi, 3)
    assert res.verdict.ok
    assert res.facts["mhl_fails_at"] == 0 and res.facts["betti_split_fails_at"] == 0
