"""Intersection numbers of carried multicurves, quadratic and quasi-linear."""

from .coarse import Checks, exp_shorten, lift
from .moves import EXACT, UpdateRule, make_clean, move_until_drop, shared_size
from .traintrack import crossing_sum

CUTOVER = 256


def _prepare(wp, rule=None):
    wp, clean = make_clean(wp, EXACT)
    return wp, clean if rule is None else clean.compose(rule)


def naive_shorten(wp):
    """Run exact moves to a crossing pair; returns (pair, composed rule)."""
    wp, rule = _prepare(wp)
    while not wp.pair.is_crossing:
        wp, step = move_until_drop(wp, EXACT)
        rule = step.compose(rule)
    return wp, rule


def naive_intersection(wp):
    return crossing_sum(naive_shorten(wp)[0])


def fast_shorten(wp, cutover=CUTOVER, early_exit=False, check=False):
    """Coarse-guided version of naive_shorten."""
    wp, rule = _prepare(wp)
    F = wp.pair.surface.F
    checks = Checks(wp.pair.surface) if check else None
    while not wp.pair.is_crossing:
        m = shared_size(wp, EXACT)
        if m <= cutover:
            tail, step = naive_shorten(wp)
            return tail, step.compose(rule)
        U = exp_shorten(lift(wp), early_exit, checks)
        wp = U.apply(wp)
        rule = U.compose(rule)
        if not wp.pair.is_crossing:
            wp, step = move_until_drop(wp, EXACT)
            rule = step.compose(rule)
        assert F * shared_size(wp, EXACT) <= (F - 1) * m, "round did not contract"
    return wp, rule


def fast_intersection(wp, cutover=CUTOVER, early_exit=False, check=False):
    return crossing_sum(fast_shorten(wp, cutover, early_exit, check)[0])


def intersection_from_delta(surface, da, db, method="fast"):
    from .coordinates import standard_pair_from_delta

    wp = standard_pair_from_delta(surface, da, db)
    if method == "naive":
        return naive_intersection(wp)
    return fast_intersection(wp)


def shorten_curve(surface, da, cutover=CUTOVER):
    """Shorten the curve with Delta-coordinates da; returns (pair, rule)."""
    from .coordinates import standard_pair_from_delta

    wp = standard_pair_from_delta(surface, da, da)
    start = wp
    end, rule = fast_shorten(wp, cutover)
    assert isinstance(rule, UpdateRule) and rule.apply(start).mu == end.mu
    return end, rule
