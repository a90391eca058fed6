"""Interval-weighted pairs and the divide-and-conquer shortening engine.

An interval weight [lo, hi) stands for any real value in [lo, hi - 1].  All
arithmetic in `numerics` is sound for that reading, and truncation rounds
outwards so that a truncated pair still contains every scaled exact value.
Consequently any move that is defined on a coarse pair is a legitimate move
for every pair it approximates.
"""

import logging

from .moves import (
    INTERVAL,
    IsCrossing,
    Undefined,
    UpdateRule,
    move,
    shared_size,
)
from .numerics import Interval, cdiv, complexity, complexity_bound, uncertainty
from .traintrack import WeightedPair

log = logging.getLogger(__name__)


class InsufficientCertainty(ValueError):
    pass


class IntervalPair(WeightedPair):
    """A tight pair whose branch weights are Intervals."""

    __slots__ = ()

    @property
    def u(self):
        return self.mu

    @property
    def v(self):
        return self.nu

    @classmethod
    def wrap(cls, wp):
        return wp if isinstance(wp, cls) else cls(wp.pair, wp.mu, wp.nu)


def lift(wp):
    """Singleton intervals around exact weights."""
    return IntervalPair(wp.pair, [Interval.point(x) for x in wp.mu],
                        [Interval.point(x) for x in wp.nu])


def _shared_intervals(T):
    for e in T.pair.shared_edges:
        yield from T.shared_weights(e)


def ceil_inf(T):
    return max((complexity_bound(I) for I in _shared_intervals(T)), default=0)


def eps_inf(T):
    return max((uncertainty(I) for I in _shared_intervals(T)), default=0)


def omega(T):
    """Certainty: a lower bound on the leading bits fixed by the intervals."""
    return ceil_inf(T) - eps_inf(T)


def coarsen(I, d):
    """Outward rounded I / 2^d."""
    if d == 0:
        return I
    return Interval(I.lo >> d, cdiv(I.hi - 1, 1 << d) + 1)


def trunc(T, k):
    """Keep roughly k leading bits of every weight."""
    w = omega(T)
    if not 0 <= k < w:
        raise InsufficientCertainty(f"cannot truncate to {k} bits with certainty {w}")
    d = ceil_inf(T) - k
    return IntervalPair(T.pair, [coarsen(I, d) for I in T.mu], [coarsen(I, d) for I in T.nu])


def apply_rule(rule, T):
    return IntervalPair.wrap(rule.apply(T))


def coarse_move(T, trace=None):
    """(new pair, rule) for one move, or None where the move is undefined."""
    if T.pair.is_crossing:
        raise IsCrossing("no shared structure left")
    try:
        new, rule = move(T, INTERVAL, trace, max_rotation_bits=omega(T))
    except Undefined as ex:
        log.debug("coarse move undefined: %s", ex)
        return None
    return IntervalPair.wrap(new), rule


def _until_drop(T, trace=None):
    """(pair reached, rule, dropped) applying moves until the size drops."""
    rule = UpdateRule.identity(T.pair)
    if T.pair.is_crossing:
        return T, rule, False
    start = shared_size(T, INTERVAL)
    limit = 2 * T.pair.surface.B ** 2
    for _ in range(limit):
        step = coarse_move(T, trace)
        if step is None:
            return T, rule, False
        T, u = step
        rule = u.compose(rule)
        now = shared_size(T, INTERVAL)
        if now > start:
            raise AssertionError(f"shared size grew from {start} to {now}")
        if now < start or T.pair.is_crossing:
            return T, rule, True
    raise AssertionError(f"no drop in shared size within {limit} moves")


def coarse_move_until_drop(T, trace=None):
    """(pair after the drop or None if a move was undefined, composed rule)."""
    new, rule, dropped = _until_drop(T, trace)
    return (new if dropped else None), rule


def update_lt(T):
    return _until_drop(T)[1]


class Checks:
    """Collects the bookkeeping inequalities asserted along a run."""

    def __init__(self, surface):
        self.C = surface.C
        self.D = surface.D
        self.E = surface.E
        self.count = 0

    def step(self, before, rule, after):
        s0, s1 = shared_size(before, INTERVAL), shared_size(after, INTERVAL)
        assert eps_inf(after) - eps_inf(before) <= rule.size, "uncertainty grew too fast"
        if s1 < s0:
            assert rule.size <= self.C * (s0 - s1), "update rule too large"
            assert omega(before) - omega(after) <= self.D * (s0 - s1), "certainty lost too fast"
        self.count += 1

    def progress(self, T1, rule, after):
        gained = shared_size(T1, INTERVAL) - shared_size(after, INTERVAL)
        if after.pair.is_crossing or gained * self.E >= omega(T1):
            return
        assert coarse_move(after) is None, "exp_shorten stalled with a defined move"


def exp_shorten(T1, early_exit=False, checks=None):
    """An update rule making substantial progress on T1, found coarsely."""
    T1 = IntervalPair.wrap(T1)
    bound = max(omega(T1), 1).bit_length() + 1
    return _exp_shorten(T1, early_exit, checks, bound)


def _exp_shorten(T1, early_exit, checks, depth):
    if checks is not None:
        assert depth >= 0, "recursion deeper than log2(omega) + 1"
    rule = _exp_body(T1, early_exit, checks, depth)
    if checks is not None:
        checks.progress(T1, rule, apply_rule(rule, T1))
    return rule


def _exp_body(T1, early_exit, checks, depth):
    if T1.pair.is_crossing:
        return UpdateRule.identity(T1.pair)
    w = omega(T1)
    if w <= 1:
        return _drop(T1, checks)[0]
    k = cdiv(w, 2)
    U1 = _exp_shorten(trunc(T1, k), early_exit, checks, depth - 1)
    T2 = apply_rule(U1, T1)
    U2, T3 = _drop(T2, checks)
    rule = U2.compose(U1)
    if T3.pair.is_crossing:
        return rule
    E = T1.pair.surface.E
    if early_exit and E * shared_size(T3, INTERVAL) <= E * shared_size(T1, INTERVAL) - w:
        return rule
    if k >= omega(T3):
        # only reachable once the first half has already made its progress
        return rule
    U3 = _exp_shorten(trunc(T3, k), early_exit, checks, depth - 1)
    T4 = apply_rule(U3, T3)
    U4, _ = _drop(T4, checks)
    return U4.compose(U3).compose(rule)


def _drop(T, checks):
    new, rule, _ = _until_drop(T)
    if checks is not None:
        checks.step(T, rule, new)
    return rule, new
