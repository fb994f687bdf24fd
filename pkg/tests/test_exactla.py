from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from deltakoszul.common.errors import AmbientMismatch, DivisionByZero, FieldMismatch
from deltakoszul.exactla import Field, Mat, Scalar, Subspace, intersect, kernel_basis, left_kernel, rank, rref, solve

Q = Field.rationals()
F2 = Field.prime(2)
F3 = Field.prime(3)


def _random_mat(rng: random.Random, f: Field, max_dim: int = 5) -> Mat:
    r, c = rng.randint(0, max_dim), rng.randint(1, max_dim)
    return Mat(f, f.random_array(rng, (r, c), spread=2))


def test_field_parse_and_names():
    assert Field.parse("Q") == Q
    assert Field.parse("F7") == Field.prime(7)
    assert Field.prime(7).name == "F7"
    assert Field.parse("F") == Field.prime() == Field.prime(32003)
    with pytest.raises(ValueError):
        Field.parse("F4")
    with pytest.raises(ValueError):
        Field.parse("R")


def test_coerce_rejects_inexact_values():
    with pytest.raises(TypeError):
        Q.coerce(0.5)
    assert Q.coerce("3/4") == Fraction(3, 4)
    assert Field.prime(5).coerce(Fraction(1, 2)) == 3
    with pytest.raises(DivisionByZero):
        Field.prime(5).coerce(Fraction(1, 5))


def test_scalar_arithmetic():
    a = Scalar(Fraction(1, 2), Q)
    assert a + a == 1
    assert (a / 2).value == Fraction(1, 4)
    b = Scalar(2, Field.prime(3))
    assert b * b == 1
    with pytest.raises(FieldMismatch):
        _ = a + b
    with pytest.raises(DivisionByZero):
        _ = a / 0


@pytest.mark.parametrize("f", [Q, F2], ids=["Q", "F2"])
def test_rank_nullity(f):
    rng = random.Random(1)
    for case in range(500):
        m = _random_mat(rng, f)
        r = rank(m)
        assert r + kernel_basis(m).dim == m.cols, f"seed case {case}"
        assert r + left_kernel(m).dim == m.rows, f"seed case {case}"
        for v in left_kernel(m).vectors():
            assert f.is_zero(f.matmul(v.reshape(1, -1), m.data))


@pytest.mark.parametrize("f", [Q, F2], ids=["Q", "F2"])
def test_rref_is_idempotent(f):
    rng = random.Random(2)
    for case in range(300):
        m = _random_mat(rng, f)
        once = rref(m)
        twice = rref(once.matrix)
        assert twice.matrix == once.matrix, f"case {case}"
        assert twice.pivots == once.pivots
        assert once.rank == rank(m)


@pytest.mark.parametrize("f", [Q, F2], ids=["Q", "F2"])
def test_intersection_dimension_formula(f):
    rng = random.Random(3)
    for case in range(300):
        n = rng.randint(1, 5)
        a = Subspace.span(f, n, [f.random_array(rng, (n,), 2) for _ in range(rng.randint(0, n))])
        b = Subspace.span(f, n, [f.random_array(rng, (n,), 2) for _ in range(rng.randint(0, n))])
        assert (a + b).dim + intersect(a, b).dim == a.dim + b.dim, f"case {case}"
        assert intersect(a, b) <= a and intersect(a, b) <= b


@pytest.mark.parametrize("f", [F2, F3], ids=["F2", "F3"])
def test_subspace_membership_matches_brute_force(f):
    rng = random.Random(4)
    p = f.characteristic
    for case in range(100):
        n = rng.randint(1, 3)
        gens = [f.random_array(rng, (n,), 2) for _ in range(rng.randint(0, 3))]
        s = Subspace.span(f, n, gens)
        span = set()
        for coeffs in itertools.product(range(p), repeat=len(gens)):
            v = np.zeros(n, dtype=np.int64)
            for c, g in zip(coeffs, gens):
                v = (v + c * g) % p
            span.add(tuple(int(x) for x in v))
        assert len(span) == p**s.dim, f"case {case}"
        for v in itertools.product(range(p), repeat=n):
            assert s.contains(np.array(v, dtype=np.int64)) == (v in span)


def test_solve_returns_a_preimage_or_none():
    rng = random.Random(5)
    for _ in range(200):
        m = _random_mat(rng, Q, 4)
        target = Q.random_array(rng, (m.cols,), 2)
        x = solve(m, target)
        reachable = Subspace.span(Q, m.cols, m.data).contains(target)
        assert (x is not None) == reachable
        if x is not None:
            assert np.array_equal(Q.matmul(x.reshape(1, -1), m.data)[0], target)


def test_mismatched_ambients_are_rejected():
    with pytest.raises(AmbientMismatch):
        intersect(Subspace.full(Q, 2), Subspace.full(Q, 3))
    with pytest.raises(FieldMismatch):
        intersect(Subspace.full(Q, 2), Subspace.full(F2, 2))


def test_empty_and_full_subspaces():
    z = Subspace.zero(Q, 3)
    full = Subspace.full(Q, 3)
    assert z.dim == 0 and full.is_full()
    assert intersect(z, full) == z
    assert z + full == full
    assert Subspace.span(Q, 2, [[1, 2], [2, 4]]).dim == 1


def test_large_primes_do_not_wrap():
    f = Field.prime(1000000007)
    p = f.characteristic
    row = f.asarray([[p - 1] * 20], ndim=2)
    col = f.asarray([[p - 1]] * 20, ndim=2)
    assert f.matmul(row, col)[0, 0] == 20
    assert rank(Mat(f, f.asarray([[p - 1, p - 1], [1, 1]], ndim=2))) == 1
    assert Field.prime(2**31 - 1).name == "F2147483647"
    with pytest.raises(ValueError):
        Field.parse("F2147483659")


def test_rational_products_skip_zero_rows_and_columns():
    rng = random.Random(6)
    for case in range(200):
        a = Q.random_array(rng, (rng.randint(1, 4), rng.randint(1, 4)), spread=1)
        b = Q.random_array(rng, (a.shape[1], rng.randint(1, 4)), spread=1)
        want = [
            [sum((a[i, k] * b[k, j] for k in range(a.shape[1])), Fraction(0)) for j in range(b.shape[1])]
            for i in range(a.shape[0])
        ]
        assert Q.matmul(a, b).tolist() == want, f"case {case}"
