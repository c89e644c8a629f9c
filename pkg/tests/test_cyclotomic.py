from __future__ import annotations

import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import totient

from ecid.cyclotomic import is_splitting_field, orbit_index, prime_power, qorbits, splitting_necessary_condition
from ecid.groups import group_abelian
from helpers import random_instances


@st.composite
def instances(draw):
    seed = draw(st.integers(0, 2**32))
    return next(random_instances(seed, 1))


def test_prime_power():
    assert prime_power(5**6) == (5, 6)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 0, 12):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_c3_over_f2():
    data = qorbits(group_abelian([3]), 2)
    assert sorted(data.orbit_sizes) == [1, 2]
    assert data.t_w == 2 and data.l == 2


def test_rejects_modular_and_nonabelian(sl23):
    with pytest.raises(ValueError):
        qorbits(group_abelian([6]), 3)
    with pytest.raises(ValueError):
        qorbits(sl23, 5)


@settings(max_examples=80, deadline=None)
@given(instances())
def test_orbit_laws(inst):
    inv, q, _ = inst
    g = group_abelian(inv)
    data = qorbits(g, q)
    orders = g.element_orders
    assert sum(data.orbit_sizes) == g.n
    assert data.t_w == data.l
    assert data.l == math.lcm(*data.t.values())
    for x in range(g.n):
        o = int(orders[x])
        t = data.t[x]
        # t_g is the order of q mod o(g) and divides phi(o(g))
        assert data.gen_class_sizes[x] == totient(o)
        assert totient(o) % t == 0
        for a in range(1, 4 * data.l + 1):
            assert (g.power(x, pow(q, a, o)) == x) == (a % t == 0)
    for x in range(g.n):
        for y in range(g.n):
            if orders[y] % orders[x] == 0:
                assert data.t[y] % data.t[x] == 0


@settings(max_examples=80, deadline=None)
@given(instances())
def test_splitting_equivalence(inst):
    inv, q, t = inst
    g = group_abelian(inv)
    v = is_splitting_field(g, q, t)
    assert v.consistent
    # independent route: over F_{q^t} every orbit is a singleton
    singletons = all(s == 1 for s in qorbits(g, q**t).orbit_sizes)
    assert v.splits == singletons
    assert v.t_w == orbit_index(v.exponent, q)


def test_cyclic_totient_census():
    g = group_abelian([36])
    counts = Counter(g.element_orders.tolist())
    for d in (1, 2, 3, 4, 6, 9, 12, 18, 36):
        assert counts[d] == totient(d)


def test_example_groups_orbit_index():
    q = 5**6
    for inv in ([2, 16, 9, 3], [8, 8, 16, 9]):
        g = group_abelian(inv)
        v = is_splitting_field(g, q, 4)
        assert v.splits and v.exponent == 144
        assert v.t_w <= 4


def test_splitting_necessary_condition(sl23):
    # exp(SL(2,3)/Q8) = 3
    assert splitting_necessary_condition(sl23, 25)
    assert splitting_necessary_condition(sl23, 7)
    assert not splitting_necessary_condition(sl23, 5)
