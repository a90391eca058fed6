import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.coarse import (
    Checks,
    InsufficientCertainty,
    IntervalPair,
    apply_rule,
    ceil_inf,
    coarse_move,
    coarse_move_until_drop,
    eps_inf,
    exp_shorten,
    lift,
    omega,
    trunc,
)
from artifact.intersection import naive_intersection
from artifact.moves import EXACT, INTERVAL, IsCrossing, _clean_up, make_clean, move, \
    move_until_drop, rotation_number, separate, shared_size, split, untwist
from artifact.numerics import Interval
from artifact.standard import S04
from artifact.traintrack import WeightedPair, check_tight, crossing_sum

from conftest import curves, iota, pair_of


def clean(a, b):
    return make_clean(pair_of(a, b))[0]


def _exact_step(wp, kind, e):
    """The exact move of the given kind on edge e."""
    from artifact.moves import find_combed_cycles

    if kind == "split":
        new, rule = split(wp, e, EXACT)
        return _clean_up(new, EXACT, rule)
    comp, incomp = find_combed_cycles(wp.pair)
    if kind == "separate":
        return separate(wp, next(c for c in incomp if e in c.edges))
    r = int(kind[len("untwist"):])
    c = next(c for c in comp if e in c.edges and rotation_number(wp, c, EXACT) >= 1)
    return untwist(wp, c, r, EXACT)


def test_lift_is_pointwise():
    wp = clean((7, 3), (2, 9))
    T = lift(wp)
    assert T.u[0] == Interval(wp.mu[0], wp.mu[0] + 1)
    assert shared_size(T, INTERVAL) == shared_size(wp, EXACT)
    assert eps_inf(T) == 0
    assert omega(T) == ceil_inf(T)


def test_lift_of_seven():
    wp = clean((7, 3), (2, 9))
    T = IntervalPair(wp.pair, [Interval.point(7)] * len(wp.mu), [Interval.point(1)] * len(wp.nu))
    assert T.u[0] == Interval(7, 8)


def test_trunc_rejects_without_certainty():
    T = lift(clean((2 ** 40 + 5, 3), (9, 2 ** 30)))
    with pytest.raises(InsufficientCertainty):
        trunc(T, ceil_inf(T))
    with pytest.raises(InsufficientCertainty):
        trunc(T, -1)


@given(curves(64), curves(64), st.integers(0, 200))
def test_trunc_is_sound_and_nearly_exact(a, b, k):
    wp = clean(a, b)
    if wp.pair.is_crossing:
        return
    T = lift(wp)
    w = omega(T)
    k = k % w if w else 0
    if w == 0:
        return
    S = trunc(T, k)
    d = ceil_inf(T) - k
    for x, I in zip(wp.mu + wp.nu, S.mu + S.nu):
        assert I.lo << d <= x <= (I.hi - 1) << d
    assert omega(S) in (k - 1, k)


@given(curves(64), curves(64), st.integers(0, 200), st.integers(0, 200))
def test_double_trunc_contains_single(a, b, k1, k2):
    wp = clean(a, b)
    if wp.pair.is_crossing:
        return
    T = lift(wp)
    k1 = k1 % omega(T)
    S = trunc(T, k1)
    if omega(S) <= 0:
        return
    k2 = k2 % omega(S)
    twice = trunc(S, k2)
    d = (ceil_inf(T) - k1) + (ceil_inf(S) - k2)
    for x, I in zip(wp.mu + wp.nu, twice.mu + twice.nu):
        assert I.lo << d <= x <= (I.hi - 1) << d


@given(curves(40), curves(40))
def test_singleton_moves_agree_with_exact(a, b):
    wp = clean(a, b)
    while not wp.pair.is_crossing:
        T = lift(wp)
        step = coarse_move(T)
        assert step is not None
        new, rule = move(wp, EXACT)
        assert step[1].A == rule.A and step[1].B == rule.B and step[1].target == rule.target
        wp = new


def test_overlapping_split_is_undefined():
    rng = random.Random(5)
    found = False
    for _ in range(50):
        a = (rng.getrandbits(60), rng.getrandbits(60))
        wp = clean(a, a)
        T = lift(wp)
        if not wp.pair.is_crossing and coarse_move(trunc(T, 0)) is None:
            found = True
            break
    assert found


def test_crossing_raises():
    with pytest.raises(IsCrossing):
        coarse_move(lift(pair_of((0, 1), (1, 0))))


@pytest.mark.parametrize("seed", range(6))
def test_coarse_guide(seed):
    """Defined coarse moves on truncations are exact moves on the exact pair."""
    rng = random.Random(seed)
    bits = rng.choice([24, 64])
    a = (rng.getrandbits(bits), rng.getrandbits(bits) - (1 << (bits - 1)))
    b = a if seed % 2 else (rng.getrandbits(bits), rng.getrandbits(bits))
    wp = clean(a, b)
    while not wp.pair.is_crossing:
        T = lift(wp)
        for k in range(omega(T)):
            trace = []
            step = coarse_move(trunc(T, k), trace)
            if step is None:
                continue
            kind, e = trace[-1]
            _, want = _exact_step(wp, kind, e)
            got = step[1]
            assert (got.A, got.B, got.target) == (want.A, want.B, want.target)
            moved = got.apply(wp)
            assert check_tight(moved.pair) and moved.is_realizable()
        wp = move(wp, EXACT)[0]


def test_coarse_until_drop_on_lift_matches_exact():
    wp = clean((123456789, 987), (55, -31))
    new, rule = coarse_move_until_drop(lift(wp))
    exact, erule = move_until_drop(wp, EXACT)
    assert new is not None
    assert rule.A == erule.A and rule.B == erule.B
    assert [I.lo for I in new.mu] == list(exact.mu)


def test_coarse_until_drop_undefined_gives_identity():
    rng = random.Random(5)
    for _ in range(50):
        a = (rng.getrandbits(60), rng.getrandbits(60))
        wp = clean(a, a)
        T = trunc(lift(wp), 0)
        if coarse_move(T) is None:
            new, rule = coarse_move_until_drop(T)
            assert new is None
            assert rule.apply(T).mu == T.mu and rule.target == T.pair
            return
    pytest.fail("no undefined instance found")


def test_exp_shorten_crossing_is_identity():
    T = lift(pair_of((0, 1), (1, 0)))
    rule = exp_shorten(T)
    assert rule.target == T.pair and rule.apply(T).mu == T.mu


def test_exp_shorten_small_omega_is_one_drop():
    S = trunc(lift(clean((2 ** 30 + 7, 99), (5, -3))), 1)
    assert omega(S) <= 1
    rule = exp_shorten(S)
    _, want = coarse_move_until_drop(S)
    assert (rule.A, rule.B, rule.target) == (want.A, want.B, want.target)


@given(curves(200), curves(200))
def test_exp_shorten_then_naive(a, b):
    wp = clean(a, b)
    checks = Checks(S04)
    rule = exp_shorten(lift(wp), checks=checks)
    mid = rule.apply(wp)
    assert check_tight(mid.pair) and mid.is_realizable()
    assert naive_intersection(mid) == iota(a, b)


@given(curves(200), curves(200))
def test_exp_shorten_progress(a, b):
    wp = clean(a, b)
    if wp.pair.is_crossing:
        return
    T = lift(wp)
    rule = exp_shorten(T)
    after = apply_rule(rule, T)
    gained = shared_size(T, INTERVAL) - shared_size(after, INTERVAL)
    assert after.pair.is_crossing or gained * S04.E >= omega(T) or coarse_move(after) is None
