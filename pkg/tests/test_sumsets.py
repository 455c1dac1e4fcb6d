import itertools
import random
from math import comb, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dilates import ordgroup as og
from dilates import sumsets as ss
from dilates.alphafield import ctx_new


def naive(k, X, l):
    return sorted({k * x + l * y for x, y in itertools.product(X, X)})


def test_sumset_z_examples():
    assert ss.sumset_z(1, [0, 1, 2], 2) == tuple(range(7))
    assert len(ss.sumset_z(1, [0, 1, 3, 4], 3)) == 12
    assert ss.sumset_z(5, [7], -2) == (21,)
    assert ss.dilate_z([0, 1, 2], 3) == (0, 3, 6)


def test_gcd_of_set_examples():
    assert ss.gcd_of_set([(2, 4), (6, 0)]) == 2
    assert ss.gcd_of_set([(0, 0), (1, 0), (0, 1)]) == 1
    assert ss.gcd_of_set([(3,)]) == 3
    with pytest.raises(ValueError):
        ss.gcd_of_set([(0, 0)])


def test_hnf_examples():
    B = ss.hnf_lattice([(2, 0), (0, 2)])
    assert B == [(2, 0), (0, 2)]
    assert not ss.lattice_member((1, 1), B)
    assert ss.coset_label((1, 1), B) == (1, 1)
    assert ss.hnf_lattice([(2, 0), (4, 0)]) == [(2, 0)]
    B = ss.hnf_lattice([(1, 0), (0, 1)])
    assert {ss.coset_label(v, B) for v in [(3, -2), (0, 5), (7, 7)]} == {(0, 0)}


def test_coset_decompose_examples():
    d = ss.coset_decompose([(0, 0), (1, 0), (0, 1)], 1, 2)
    assert (d.q, d.bound, d.total) == (3, 9, 9) and d.additive
    d = ss.coset_decompose([0, 1], 1, 2)
    assert (d.q, d.bound, d.total) == (2, 4, 4)
    assert d.hnf == [(2,)]
    d = ss.coset_decompose([0], 1, 2)
    assert d.q == 1


def test_verify_coset_bound_examples():
    rep = ss.verify_coset_bound([(0, 0), (1, 0), (0, 1)], 1, 2)
    assert rep.passed and rep.size == 9 and rep.decomposition.q == 3
    rep = ss.verify_coset_bound([(5, 5)], 2, 3)
    assert rep.passed and rep.size == 1
    rep = ss.verify_coset_bound([0, 1, 2], 1, 2)
    assert rep.passed and rep.size == rep.bound == 7
    with pytest.raises(ValueError):
        ss.verify_coset_bound([0, 1], 2, -2)


def test_product_sets_in_constructed_groups():
    for k, l in [(1, 2), (2, 3), (3, 3), (3, 1), (2, 1)]:
        X = ss.construction_set(k, l, 2, copies=1)
        assert len(ss.productset_g(X, k, l)) == 3
    for r in range(1, 5):
        X = ss.construction_set(2, 3, r)
        assert len(ss.productset_g(X, 2, 3)) == comb(r + 1, 2)
    c = ctx_new(2, 3)
    X = [og.generator_e(i, 2, c) for i in range(3)]
    assert len(ss.productset_g(X, 2, 3)) == 6
    assert len(ss.productset_g([og.identity(2, c)], 2, 3)) == 1


def test_gset_dedup_uses_semantic_equality():
    c = ctx_new(1, 2)
    s = ss.GSet([og.parse_element("(a + a^2; 1)", c), og.parse_element("(1; 1)", c)])
    assert len(s) == 1
    assert og.parse_element("(a^3 + 2*a^2; 1)", c) in s  # a^3 + 2a^2 = a + a^2 = 1


small_z = st.lists(st.integers(-15, 15), min_size=1, max_size=7, unique=True)
nonzero = st.integers(-4, 4).filter(bool)


@given(small_z, nonzero, nonzero)
def test_sumset_matches_naive_and_kemperman(X, k, l):
    S = ss.sumset_z(k, X, l)
    assert list(S) == naive(k, X, l)
    assert len(S) >= 2 * len(X) - 1


@given(small_z, nonzero, nonzero, nonzero, st.integers(-20, 20))
def test_affine_invariance(X, k, l, a, b):
    Y = [a * x + b for x in X]
    assert ss.sumset_size_z(k, Y, l) == ss.sumset_size_z(k, X, l)


vec2 = st.tuples(st.integers(-10, 10), st.integers(-10, 10))


@settings(max_examples=150)
@given(st.lists(vec2, min_size=2, max_size=5))
def test_hnf_index_matches_minors(gens):
    B = ss.hnf_lattice(gens)
    for v in gens:
        assert ss.lattice_member(v, B)
    minors = [a[0] * b[1] - a[1] * b[0] for a, b in itertools.combinations(gens, 2)]
    g = 0
    for m in minors:
        g = gcd(g, m)
    if g:
        assert len(B) == 2 and abs(B[0][0] * B[1][1] - B[0][1] * B[1][0]) == g
    else:
        assert len(B) <= 1


@settings(max_examples=150)
@given(st.lists(vec2, min_size=1, max_size=4), vec2, vec2)
def test_coset_labels_are_canonical(gens, u, w):
    B = ss.hnf_lattice(gens)
    same = ss.coset_label(u, B) == ss.coset_label(w, B)
    diff = tuple(a - b for a, b in zip(u, w))
    assert same == ss.lattice_member(diff, B)
    # adding a lattice vector never changes the label
    shifted = tuple(a + 3 * b for a, b in zip(u, gens[0]))
    assert ss.coset_label(shifted, B) == ss.coset_label(u, B)


@settings(max_examples=200)
@given(st.lists(vec2, min_size=1, max_size=8, unique=True), nonzero, nonzero)
def test_coset_bound_fuzz(X, k, l):
    if abs(k) == abs(l):
        return
    rep = ss.verify_coset_bound(X, k, l)
    assert rep.passed, rep.checks
    if rep.decomposition is not None:
        assert rep.decomposition.additive


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(1, 2), (2, 3), (1, 1)]))
def test_gset_no_false_merges(seed, kl):
    c = ctx_new(*kl)
    rng = random.Random(seed)
    base = [og.random_element(rng, c, 1, terms=2, span=1, coef=1) for _ in range(10)]
    s = ss.GSet(base)
    items = list(s)
    for x, y in itertools.combinations(items, 2):
        assert not og.equal(x, y)
    for x in base:
        assert x in s
