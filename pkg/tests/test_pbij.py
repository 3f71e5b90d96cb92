"""Partial bijection algebra: composition, inverses, idempotents and
the natural partial order."""

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from invsem.pbij import (PartialBijection, compose, identity, empty_map,
                         partial_identity, singleton, from_pairs,
                         idempotent_power, brandt, direct_product,
                         all_partial_bijections)

from helpers import rand_pb


def test_constructor_rejects_non_injective():
    with pytest.raises(ValueError):
        PartialBijection(2, (0, 0))


def test_constructor_rejects_out_of_range():
    with pytest.raises(ValueError):
        PartialBijection(2, (2, None))


def test_compose_associative_exhaustive_degree_3():
    els = all_partial_bijections(3)
    for a in els:
        for b in els:
            ab = compose(a, b)
            for c in els:
                assert compose(ab, c) == compose(a, compose(b, c))


def test_compose_associative_randomized():
    rng = random.Random(0)
    for _ in range(100000):
        n = rng.randrange(1, 9)
        a, b, c = (rand_pb(rng, n) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(st.integers(1, 6), st.randoms(use_true_random=False))
def test_inverse_laws(n, rnd):
    a = rand_pb(rnd, n)
    ai = a.inverse()
    assert compose(compose(a, ai), a) == a
    assert compose(compose(ai, a), ai) == ai
    assert ai.inverse() == a


def test_idempotents_are_partial_identities_and_commute():
    for e, f in itertools.product(
            [p for p in all_partial_bijections(4) if p.is_idempotent()],
            repeat=2):
        assert e.domain() == e.ran()
        assert all(e[x] == x for x in e.domain())
        assert compose(e, f) == compose(f, e)


def test_natural_order_dual_forms_agree():
    # x <= y iff x = x x~ y iff x = y x~ x
    els = all_partial_bijections(3)
    for x in els:
        xb = x.inverse()
        for y in els:
            left = compose(compose(x, xb), y) == x
            right = compose(compose(y, xb), x) == x
            assert left == right
            assert x.le(y) == left


def test_natural_order_is_partial_order():
    els = all_partial_bijections(3)
    for x in els:
        assert x.le(x)
        for y in els:
            if x.le(y) and y.le(x):
                assert x == y
            for z in els:
                if x.le(y) and y.le(z):
                    assert x.le(z)


def test_constructors():
    assert identity(3).images == (0, 1, 2)
    assert empty_map(3).images == (None, None, None)
    assert partial_identity(4, [1, 3]).images == (None, 1, None, 3)
    assert singleton(3, 0, 2).images == (2, None, None)
    assert from_pairs(3, [(0, 1), (1, 0)]).images == (1, 0, None)


def test_idempotent_power():
    rng = random.Random(1)
    for _ in range(200):
        x = rand_pb(rng, 5)
        e = idempotent_power(x)
        assert e.is_idempotent()
        # e is a power of x
        seen = {x}
        y = x
        while not y.is_idempotent():
            y = compose(y, x)
            assert y not in seen or y.is_idempotent()
            seen.add(y)
        assert e == y


def test_brandt_structure():
    maps, idx = brandt(3)
    zero = maps[idx[("zero",)]]
    assert zero == empty_map(3)
    s = maps[idx[(0, 2)]]
    t = maps[idx[(2, 1)]]
    assert compose(s, t) == maps[idx[(0, 1)]]
    assert compose(t, s) == zero


def test_direct_product_componentwise():
    rng = random.Random(2)
    for _ in range(50):
        a1, a2 = rand_pb(rng, 3), rand_pb(rng, 2)
        b1, b2 = rand_pb(rng, 3), rand_pb(rng, 2)
        p = compose(direct_product([a1, a2]), direct_product([b1, b2]))
        assert p == direct_product([compose(a1, b1), compose(a2, b2)])


def test_all_partial_bijections_count():
    # sum over k of C(n, k)^2 * k!
    assert len(all_partial_bijections(3)) == 34
    assert len(set(all_partial_bijections(3))) == 34
