from __future__ import annotations

from fractions import Fraction

import pytest

from deltakoszul.algebra import AlgebraSpec, Quiver, build_algebra, make_relation
from deltakoszul.common.errors import BadRelation, ModeMismatch
from deltakoszul.exactla import Field


def test_quiver_rejects_undeclared_vertices():
    with pytest.raises(ValueError):
        Quiver.build(["a"], [("x", "a", "b")])
    with pytest.raises(ValueError):
        Quiver.build(["a", "a"])


def test_paths_compose_left_to_right():
    q = Quiver.build(["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c")])
    p = q.parse_path("x.y")
    assert (p.source, p.target, p.length) == (0, 2, 2)
    with pytest.raises(BadRelation):
        q.parse_path("y.x")
    assert [p.label(q) for p in q.paths(2)] == ["x.y"]


def test_make_relation_merges_and_rejects_zero():
    q = Quiver.build(["v"], [("x", "v", "v"), ("y", "v", "v")])
    r = make_relation(q, Field.rationals(), [(1, "x.y"), (Fraction(1, 2), "x.y"), (-1, "y.x")])
    assert r.label(q, Field.rationals()) == "3/2*x.y + -1*y.x"
    with pytest.raises(BadRelation):
        make_relation(q, Field.rationals(), [(1, "x.y"), (-1, "x.y")])
    with pytest.raises(BadRelation):
        make_relation(q, Field.rationals(), [(1, "z")])


def test_graded_relations_must_be_homogeneous():
    q = Quiver.build(["v"], [("x", "v", "v")])
    r = make_relation(q, Field.rationals(), [(1, "x.x"), (1, "x.x.x")])
    with pytest.raises(BadRelation):
        AlgebraSpec(q, (r,), "graded", 4)
    # fine in finite-dimensional mode
    t = build_algebra(AlgebraSpec(q, (r,), "findim", 4))
    # x² = -x³ = x⁴ = 0 below N
    assert t.layer_dims() == [1, 1]


def test_truncated_polynomial_ring(kx3):
    assert kx3.layer_dims() == [1, 1, 1]
    assert kx3.radical_dims() == [3, 2, 1, 0]
    assert kx3.nilpotency_index == 3
    assert kx3.dim() == 3


def test_cube_vanishes_at_either_bound(kx3):
    assert kx3.reduce(kx3.quiver.parse_path("x.x.x")) == {}
    assert kx3.multiply(kx3.element((1, "x")), kx3.element((1, "x.x"))) == {}
    assert kx3.multiply(kx3.element((1, "x")), kx3.element((2, "x"))) == kx3.element((2, "x.x"))


def test_exterior_algebra_dimensions(exterior):
    assert exterior.layer_dims() == [1, 2, 1]
    assert exterior.dim() == 4
    assert exterior.nilpotency_index == 3
    xy = exterior.element((1, "x.y"))
    yx = exterior.element((1, "y.x"))
    assert len(xy) == 1
    assert {b: -c for b, c in xy.items()} == yx


def test_graded_polynomial_ring(kx_graded):
    assert kx_graded.graded
    assert kx_graded.layer_dims() == [1] * 7
    assert kx_graded.validate_standard_graded().status == "certified_up_to"
    assert kx_graded.validate_standard_graded().bound == 6


def test_standard_graded_check_needs_graded_mode(kx2):
    with pytest.raises(ModeMismatch):
        kx2.validate_standard_graded()


def test_prime_field_algebra(make_algebra):
    t = make_algebra(["v"], [("x", "v", "v"), ("y", "v", "v")], [[(1, "x.y"), (2, "y.x")]], bound=3, field="F3")
    # xy = -2yx = yx over F3
    assert t.layer_dims() == [1, 2, 3]
    assert t.field.name == "F3"
