import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.numerics import (
    Interval,
    NotComparable,
    Order,
    cdiv,
    complexity,
    interval_arith,
    interval_fdiv,
    interval_lt,
    interval_stats,
    shift,
    uncertainty,
)


def iv(lo, width):
    return Interval(lo, lo + width)


intervals = st.builds(iv, st.integers(-40, 40), st.integers(1, 12))


def test_complexity_examples():
    assert complexity(0) == 0
    assert complexity(5) == 3
    assert complexity((-8, 1)) == 5


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval(3, 3)


@pytest.mark.parametrize("I, J, want", [
    ((3, 5), (5, 9), Order.LESS),
    ((3, 6), (5, 9), Order.INCOMPARABLE),
    ((9, 10), (2, 9), Order.GREATER),
])
def test_interval_lt(I, J, want):
    assert interval_lt(Interval(*I), Interval(*J)) is want


def test_arith_examples():
    assert interval_arith(Interval(1, 2), Interval(10, 12), "+") == Interval(11, 13)
    assert interval_arith(Interval.point(3), Interval.point(4), "*") == Interval.point(12)
    assert interval_arith(Interval(2, 4), Interval(1, 3), "-") == Interval(0, 3)


def test_subtraction_oracle():
    # brute force over all integer pairs
    I, J = Interval(2, 4), Interval(1, 3)
    vals = {x - y for x in range(I.lo, I.hi) for y in range(J.lo, J.hi)}
    assert (min(vals), max(vals) + 1) == (0, 3)


@given(intervals, intervals, st.sampled_from("+-*"))
def test_arith_contains_and_is_tight(I, J, op):
    f = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b}[op]
    vals = {f(x, y) for x in range(I.lo, I.hi) for y in range(J.lo, J.hi)}
    K = interval_arith(I, J, op)
    assert all(v in K for v in vals)
    assert (K.lo, K.hi - 1) == (min(vals), max(vals))


def _fdiv_oracle(I, J):
    n = 0
    while interval_lt(Interval((n + 1) * J.lo, (n + 1) * (J.hi - 1) + 1), I) is Order.LESS:
        n += 1
    return n


@pytest.mark.parametrize("I, J, want", [
    (Interval(10, 20), Interval(1, 2), 9),
    (Interval(10, 20), Interval.point(2), 4),
    (Interval.point(7), Interval.point(3), 2),
])
def test_fdiv_examples(I, J, want):
    assert interval_fdiv(I, J) == want
    assert _fdiv_oracle(I, J) == want


def test_fdiv_on_points_is_strict_floor_division():
    # n*b < a strictly, so exact multiples lose one
    for a in range(1, 1001):
        for b in range(1, a):
            want = a // b - (a % b == 0)
            assert interval_fdiv(Interval.point(a), Interval.point(b)) == want


@given(st.integers(1, 200), st.integers(1, 20), st.integers(1, 20), st.integers(1, 5))
def test_fdiv_matches_enumeration(lo, width, jlo, jwidth):
    I, J = iv(lo, width), iv(jlo, jwidth)
    if interval_lt(J, I) is not Order.LESS:
        with pytest.raises(NotComparable):
            interval_fdiv(I, J)
    else:
        assert interval_fdiv(I, J) == _fdiv_oracle(I, J)


def test_shift_examples():
    assert shift(Interval(5, 12), 2) == Interval(1, 3)
    assert shift(Interval.point(9), 0) == Interval.point(9)
    assert shift(Interval(-7, 3), 1) == Interval(-4, 2)


@given(intervals, st.integers(0, 6))
def test_shift_contains_scaled_set(I, k):
    S = shift(I, k)
    assert all(S.lo << k <= x < S.hi << k for x in range(I.lo, I.hi))
    assert uncertainty(S) <= max(uncertainty(I) - k, 1) + 1


def test_interval_stats_examples():
    assert interval_stats(Interval.point(0)) == (1, 0, 0)
    assert interval_stats(Interval(3, 5)) == (5, 3, 1)
    assert interval_stats(Interval(0, 1024)) == (11, 10, 10)


@given(st.integers(0, 1 << 300), st.integers(0, 1 << 300))
def test_complexity_submultiplicative(a, b):
    assert complexity(a * b) <= complexity(a) + complexity(b)


@given(st.integers(-1000, 1000), st.integers(1, 50))
def test_cdiv(a, b):
    assert cdiv(a, b) == -(-a // b)
    assert (cdiv(a, b) - 1) * b < a <= cdiv(a, b) * b
