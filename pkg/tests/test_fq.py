"""Subspace arithmetic over F_q, checked against explicit vector sets."""

import itertools
import random

import pytest

from qgl import fq
from qgl.fq import Subspace


def span(s: Subspace):
    """Every vector of ``s``, by brute force."""
    out = set()
    for coeffs in itertools.product(range(s.q), repeat=s.dim):
        v = [0] * s.d
        for c, row in zip(coeffs, s.basis):
            v = [(a + c * b) % s.q for a, b in zip(v, row)]
        out.add(tuple(v))
    return out


def random_subspace(rng, d, q):
    k = rng.randint(0, d)
    return Subspace(q, d, [[rng.randrange(q) for _ in range(d)] for _ in range(k)])


def test_examples():
    q = 2
    a = Subspace(q, 2, [(1, 0)])
    s, i, quo = fq.subspace_arith(a, a)
    assert s == a and i == a
    assert quo(a, a).dim == 0 and quo(a, a).d == 1
    b = Subspace(q, 2, [(1, 1)])
    s, i, _ = fq.subspace_arith(a, b)
    assert s == Subspace.whole(q, 2) and i == Subspace.zero(q, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_sum_and_intersection_against_vector_sets(q):
    rng = random.Random(q)
    for _ in range(150):
        d = rng.randint(1, 3)
        a, b = random_subspace(rng, d, q), random_subspace(rng, d, q)
        sa, sb = span(a), span(b)
        assert span(a.intersect(b)) == sa & sb
        assert a.intersection_dim(b) == a.intersect(b).dim
        assert span(a + b) >= sa | sb
        assert (a + b).dim == a.dim + b.dim - a.intersect(b).dim
        assert (a <= b) == (sa <= sb)


@pytest.mark.parametrize("q", [2, 3])
def test_quotient_and_lift(q):
    rng = random.Random(10 + q)
    for _ in range(100):
        d = rng.randint(1, 4)
        by, c = random_subspace(rng, d, q), random_subspace(rng, d, q)
        img = by.quotient_image(c)
        assert img.d == d - by.dim
        assert img.dim == (c + by).dim - by.dim
        assert by.lift(img) == c + by
        r = by.restrict(c)
        assert r.d == by.dim and r.dim == by.intersect(c).dim


def test_rref_is_canonical():
    q = 3
    a = Subspace(q, 3, [(1, 2, 0), (0, 1, 1)])
    b = Subspace(q, 3, [(1, 0, 1), (1, 1, 2)])
    assert a == b and hash(a) == hash(b)
    assert a.basis == ((1, 0, 1), (0, 1, 1)) and a.pivots == (0, 1)


@pytest.mark.parametrize("d,k,q,count", [(2, 1, 2, 3), (3, 1, 3, 13), (2, 0, 5, 1), (4, 2, 2, 35)])
def test_enumeration_counts(d, k, q, count):
    subs = fq.enumerate_subspaces(d, k, q)
    assert len(subs) == count == fq.gaussian_binomial(d, k, q)
    assert len(set(subs)) == count
    assert all(s.dim == k for s in subs)


@pytest.mark.parametrize("q", [2, 3])
def test_counts_match_independent_tuples(q):
    # k-subspaces = ordered independent k-tuples / |GL(k)|
    for d in range(0, 4):
        for k in range(0, d + 1):
            tuples = 1
            for t in range(k):
                tuples *= q**d - q**t
            assert len(fq.enumerate_subspaces(d, k, q)) == tuples // fq.gl_order(k, q)


def test_zero_subspace_only():
    assert fq.enumerate_subspaces(2, 0, 5) == [Subspace.zero(5, 2)]
    assert fq.enumerate_subspaces(2, 3, 5) == []


def test_group_order_and_enumeration():
    assert fq.gl_order(2, 2) == 6
    assert fq.gl_order(3, 2) == 168
    assert sum(1 for _ in fq.enumerate_gl(2, 3)) == fq.gl_order(2, 3)


def test_apply_preserves_dimension():
    rng = random.Random(1)
    for _ in range(50):
        g = fq.random_gl(3, 3, rng)
        a = random_subspace(rng, 3, 3)
        img = a.apply(g)
        assert img.dim == a.dim
        assert {tuple(sum(g[r][c] * v[c] for c in range(3)) % 3 for r in range(3)) for v in span(a)} == span(img)


def test_length_mismatch():
    with pytest.raises(ValueError):
        Subspace(2, 3, [(1, 0)])
