from __future__ import annotations

import pytest

from deltakoszul.common.errors import ModeMismatch, TruncationExceeded
from deltakoszul.module import (
    Module,
    Morphism,
    ProjectiveShape,
    cokernel,
    direct_sum,
    direct_sum_maps,
    identity,
    kernel,
    projective,
    projective_cover,
    radical,
    radical_multiple,
    shapes_equal,
    shift,
    simple,
    submodule_generated,
    top,
    validate,
    validate_morphism,
)

V = (0, 0)  # degree 0 at the only vertex


def _proj(t, *summands):
    return projective(t, ProjectiveShape(tuple(summands)))


def test_projective_over_truncated_ring(kx3):
    p = _proj(kx3, (0, 0))
    assert p.dim_vector() == {V: 3}
    assert validate(p).ok
    assert radical(p)[V].dim == 2
    tp = top(p)
    assert len(tp.generators) == 1 and tp.generators[0].weight == 0


def test_filtration_weights_follow_shift_and_length(kx3):
    p = _proj(kx3, (0, 1))
    assert p.weight(V) == (1, 2, 3)
    assert p.has_ascending_weights(V)


def test_graded_projective_is_truncated_at_the_bound(kx_graded):
    p = _proj(kx_graded, (0, 2))
    assert sorted(p.keys()) == [(d, 0) for d in range(2, 7)]
    assert p.total_dim() == 5


def test_simple_respects_degree_bound(kx_graded):
    s = simple(kx_graded, 0, degree=6)
    assert s.dim_vector() == {(6, 0): 1}
    with pytest.raises(TruncationExceeded):
        simple(kx_graded, 0, degree=7)
    with pytest.raises(TruncationExceeded):
        projective_cover(s)


def test_quotient_by_radical_is_simple(kx3):
    p = _proj(kx3, (0, 0))
    f = kx3.field
    k, incl = submodule_generated(p, [(V, f.unit(3, 1))])
    assert k.total_dim() == 2
    n, proj = cokernel(incl)
    assert n.total_dim() == 1
    assert validate(n).ok and validate_morphism(proj).ok


def test_cover_of_simple(kx3):
    c = projective_cover(simple(kx3, 0))
    assert len(c.projective.shape) == 1
    assert c.kernel.total_dim() == 2
    assert c.epi.is_surjective()


def test_kernel_of_identity_is_zero(kx2):
    p = _proj(kx2, (0, 0))
    ker, _ = kernel(identity(p))
    assert ker.is_zero()


def test_direct_sum_inclusions_and_projections(kx3):
    a = _proj(kx3, (0, 0))
    b = simple(kx3, 0)
    s, inc_a, inc_b, pr_a, pr_b = direct_sum_maps(a, b)
    assert s.dim(V) == 4
    assert validate(s).ok
    back = inc_a.then(pr_a)
    assert back.block(V).tolist() == identity(a).block(V).tolist()
    assert inc_b.then(pr_a).is_zero()


def test_validate_catches_relation_violations(kx2):
    f = kx2.field
    bad = Module(algebra=kx2, dims={V: 1}, action={(0, V): f.asarray([[1]], ndim=2)})
    assert validate(bad).failed


def test_validate_morphism_catches_non_commuting_blocks(kx2):
    f = kx2.field
    p = _proj(kx2, (0, 0))
    s = simple(kx2, 0)
    # sends x (in the radical) onto the simple top
    g = Morphism(p, s, {V: f.asarray([[0], [1]], ndim=2)})
    assert validate_morphism(g).failed


def test_radical_powers_of_exterior_algebra(exterior):
    p = _proj(exterior, (0, 0))
    assert [radical_multiple(s, p)[V].dim for s in range(4)] == [4, 3, 1, 0]


def test_shift_needs_graded_modules(kx2, kx_graded):
    with pytest.raises(ModeMismatch):
        shift(simple(kx2, 0), 1)
    s = shift(simple(kx_graded, 0, degree=2), 2)
    assert s.dim_vector() == {(0, 0): 1}


def test_sum_with_zero_and_shape_comparison(kx3):
    a = _proj(kx3, (0, 0))
    zero, _ = kernel(identity(a))
    assert direct_sum(a, zero).same_as(a)
    # A[-2] against A[-2] ⊕ A[-1]
    assert not shapes_equal(ProjectiveShape(((0, 2),)), ProjectiveShape(((0, 2), (0, 1))))
    assert shapes_equal(ProjectiveShape(((0, 1), (0, 2))), ProjectiveShape(((0, 2), (0, 1))))
