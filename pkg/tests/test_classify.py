from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecid.classify import (
    ECID,
    MINIMAL_ECD,
    NOT_ECID,
    UNDECIDED,
    ClassificationReport,
    WedderburnData,
    b0,
    ceil_sqrt_ratio,
    classify,
    classify_abelian_semisimple,
    classify_modular_exhaustive,
    classify_nonabelian_semisimple,
    classify_semisimple_arithmetic,
    max_minimal_ideal_dim,
    modular_necessary_condition,
    wedderburn_solver,
)
from ecid.codes import idempotent_search
from ecid.field import field_make
from ecid.groups import group_abelian, group_from_permutations
from helpers import random_instances

S3 = group_from_permutations(["(12)", "(123)"])


def round_trip(report: ClassificationReport) -> None:
    text = json.dumps(report.to_json(), sort_keys=True)
    again = ClassificationReport.from_json(json.loads(text))
    assert json.dumps(again.to_json(), sort_keys=True) == text
    assert again.verdict == report.verdict


@settings(max_examples=300)
@given(st.integers(1, 10**6), st.integers(1, 1000))
def test_ceil_sqrt_ratio(num, den):
    n = ceil_sqrt_ratio(num, den)
    assert n * n * den >= num
    assert n == 0 or (n - 1) ** 2 * den < num


def b0_oracle(gamma):
    best = 0
    for f in range(1, gamma // 4 + 1):
        k = 0
        while Fraction((k + 1) ** 2) <= Fraction(gamma, f):
            k += 1
        best = max(best, k * f)
    return best


@settings(max_examples=100)
@given(st.integers(4, 600))
def test_b0_oracle(gamma):
    assert b0(gamma) == b0_oracle(gamma)
    assert b0(gamma) <= gamma // 2


def test_b0_small_gamma():
    with pytest.raises(ValueError):
        b0(3)


def solver_oracle(gamma, s):
    out = set()

    def rec(rem, k, lo, acc):
        if k == 0:
            if rem == 0:
                out.add(tuple(acc))
            return
        n = lo
        while n * n <= rem:
            rec(rem - n * n, k - 1, n, acc + [n])
            n += 1

    rec(gamma, s, 2, [])
    return sorted(list(t) for t in out)


@settings(max_examples=100)
@given(st.integers(4, 200), st.integers(1, 6))
def test_wedderburn_solver_oracle(gamma, s):
    assert wedderburn_solver(gamma, s) == solver_oracle(gamma, s)


def test_wedderburn_known_values():
    assert wedderburn_solver(21, 4) == [[2, 2, 2, 3]]
    assert len(wedderburn_solver(50, 2)) == 1
    assert wedderburn_solver(50, 2, limit=1) == [[5, 5]]
    wd = WedderburnData(3, [(2, 1), (2, 1), (2, 1), (3, 1)])
    assert (wd.gamma, wd.s, wd.max_block_dim) == (21, 4, 3)
    assert WedderburnData.from_json(wd.to_json()) == wd


@pytest.mark.parametrize(
    "inv,p",
    [([3], 2), ([5], 2), ([7], 2), ([4], 3), ([8], 3), ([2, 4], 3), ([5], 3), ([7], 3), ([2, 2, 2], 3), ([4], 5), ([3], 5)],
)
def test_abelian_verdict_matches_exhaustive_search(inv, p):
    g, f = group_abelian(inv), field_make(p)
    report = classify_abelian_semisimple(g, f)
    search = idempotent_search(g, f)
    dims = search.primitive_dimensions()
    assert max(dims) == max_minimal_ideal_dim(g, f)
    assert (report.verdict == MINIMAL_ECD) == all(d <= p for d in dims)
    round_trip(report)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_abelian_sufficient_rules_imply_exact_rule(seed):
    inv, q, _ = next(random_instances(seed, 1))
    from ecid.cyclotomic import prime_power

    p, a = prime_power(q)
    report = classify_abelian_semisimple(group_abelian(inv), field_make(p, a))
    exact = report.rule("orbit-size").holds
    assert (report.verdict == MINIMAL_ECD) == exact
    for r in report.rules_fired:
        if r.holds:
            assert exact


def test_example_groups_over_gf5_6():
    f = field_make(5, 6)
    for inv in ([2, 16, 9, 3], [8, 8, 16, 9]):
        report = classify(group_abelian(inv), f)
        assert report.verdict == MINIMAL_ECD
        assert report.quantities["exp"] == 144


def test_sl23_over_gf25(sl23, gf25):
    report = classify_nonabelian_semisimple(sl23, gf25)
    assert report.verdict == MINIMAL_ECD
    assert report.wedderburn.noncommutative == [(2, 1), (2, 1), (2, 1), (3, 1)]
    assert report.quantities["gamma"] == 21
    assert report.quantities["s"] == 4
    assert any("exp(H) = 12" in a for a in report.assertions)
    round_trip(report)


def test_splitting_assertion_is_recorded(sl23):
    f7 = field_make(7)
    plain = classify(sl23, f7)
    assert plain.verdict == UNDECIDED
    asserted = classify(sl23, f7, assert_splitting=True)
    assert asserted.verdict == MINIMAL_ECD
    assert asserted.assertions == ["splitting field: asserted by caller"]
    assert asserted.rule("wedderburn-exact").holds
    assert asserted.wedderburn.source == "arithmetic-solver"
    arithmetic = classify_semisimple_arithmetic(24, 3, 7, splitting=True, splitting_reason="given")
    assert arithmetic.rule("sqrt-gamma-bound").holds
    with pytest.raises(ValueError):
        classify(sl23, field_make(5), assert_splitting=True)


def test_s3_over_f5_matches_search():
    f5 = field_make(5)
    report = classify(S3, f5)
    assert report.verdict == MINIMAL_ECD
    dims = idempotent_search(S3, f5).primitive_dimensions()
    assert sorted(set(dims)) == [1, 2]


def test_user_wedderburn_data_checked(sl23, gf25):
    bad = WedderburnData(3, [(2, 1), (2, 1), (3, 1)])
    with pytest.raises(ValueError):
        classify(sl23, gf25, wd=bad)


def test_m12_stub():
    report = classify_semisimple_arithmetic(95040, 1, 307, class_count=15, splitting=True, splitting_reason="given")
    q = report.quantities
    assert q["gamma"] == 95039
    assert q["ceil_sqrt_gamma_over_s"] == 83
    assert q["floor_sqrt_gamma"] == 308
    assert report.verdict == UNDECIDED
    small = classify_semisimple_arithmetic(95040, 1, 73, class_count=15, splitting=True, splitting_reason="given")
    assert small.verdict == NOT_ECID
    big = classify_semisimple_arithmetic(95040, 1, 311, splitting=True, splitting_reason="given")
    assert big.verdict == MINIMAL_ECD
    round_trip(report)


@pytest.mark.parametrize(
    "group,p,verdict",
    [(group_abelian([6]), 2, NOT_ECID), (group_abelian([4]), 2, NOT_ECID), (S3, 3, ECID), (S3, 2, ECID), (group_abelian([6]), 3, ECID)],
)
def test_modular(group, p, verdict):
    report = classify_modular_exhaustive(group, field_make(p))
    assert report.verdict == verdict
    round_trip(report)


def test_c6_modular_details():
    g = group_abelian([6])
    f2 = field_make(2)
    assert modular_necessary_condition(g, f2)
    report = classify(g, f2)
    assert report.verdict == NOT_ECID
    assert report.rule("sylow-cyclic").holds
    assert sorted(report.search.primitive_dimensions()) == [2, 4]
    with pytest.raises(ValueError):
        modular_necessary_condition(g, field_make(5))


def test_verdict_is_deterministic(sl23, gf25):
    a = json.dumps(classify(sl23, gf25).to_json(), sort_keys=True)
    b = json.dumps(classify(sl23, gf25).to_json(), sort_keys=True)
    assert a == b
    assert math.isqrt(21) == 4
