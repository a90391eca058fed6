import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from artifact.coordinates import S04, curve_delta, standard_pair_from_delta

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def iota(a, b):
    """Independent oracle: intersection number of two S_{0,4} curves (p, q)."""
    return 2 * abs(a[0] * b[1] - a[1] * b[0])


def curves(max_bits=64):
    top = 1 << max_bits
    return st.tuples(st.integers(0, top), st.integers(-top, top)).filter(lambda c: c != (0, 0))


def random_curve(rng, bits):
    while True:
        c = (rng.getrandbits(bits), rng.getrandbits(bits) - (1 << (bits - 1)))
        if c != (0, 0):
            return c


def pair_of(a, b):
    return standard_pair_from_delta(S04, curve_delta(a), curve_delta(b))


def random_instance(rng, bits):
    """A realizable pair plus its expected intersection number, mixing shapes."""
    a = random_curve(rng, bits)
    kind = rng.randrange(5)
    if kind <= 2:
        b = random_curve(rng, rng.randint(1, bits))
    elif kind == 3:
        c = rng.randint(1, 5)
        b = (a[0] * c + rng.randint(0, 3), a[1] * c + rng.randint(-3, 3))
        if b == (0, 0):
            b = (1, 0)
    else:
        b = a
    return pair_of(a, b), iota(a, b)


@pytest.fixture
def rng():
    return random.Random(20261015)


def walk(wp):
    """Every (before, kind, after, rule, edge) of an exact run to a crossing pair."""
    from artifact.moves import EXACT, make_clean, move

    wp = make_clean(wp, EXACT)[0]
    out = []
    while not wp.pair.is_crossing:
        trace = []
        new, rule = move(wp, EXACT, trace)
        out.append((wp, trace[-1][0], new, rule, trace[-1][1]))
        wp = new
    return out


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
