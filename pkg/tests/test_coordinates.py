import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.coordinates import (
    S04,
    InvalidCoordinates,
    UnsupportedSurface,
    curve_delta,
    delta_identity,
    delta_to_curve,
    delta_to_mst,
    mt_of,
    standard_pair_count,
    standard_pair_from_delta,
    surface_of,
    twist_power_delta,
    validate_delta,
)
from artifact.intersection import naive_intersection

from conftest import curves, iota

ID = [[0, 2, 2], [2, 0, 4], [2, 4, 0]]


def _twist_oracle(c, k, p):
    """Apply T_c to the curve p, k times, by the twist formula directly."""
    sign = 1 if k >= 0 else -1
    for _ in range(abs(k)):
        det = p[0] * c[1] - p[1] * c[0]
        p = (p[0] + sign * 2 * det * c[0], p[1] + sign * 2 * det * c[1])
    return p


def _delta_oracle(c, k):
    imgs = [_twist_oracle(c, k, e) for e in ((0, 1), (1, 0), (1, 2))]
    return [[iota(d, img) for img in imgs] for d in ((0, 1), (1, 0), (1, 2))]


def test_identity_matrix():
    assert delta_identity(S04) == ID


def test_identity_is_symmetric_with_zero_diagonal():
    M = delta_identity(S04)
    assert all(M[i][i] == 0 for i in range(3))
    assert all(M[i][j] == M[j][i] for i in range(3) for j in range(3))


def test_worked_examples():
    assert twist_power_delta(S04, "alpha", 1) == [[0, 2, 2], [2, 4, 8], [2, 0, 4]]
    assert twist_power_delta(S04, "beta", 2) == [[8, 2, 14], [2, 0, 4], [18, 4, 32]]
    assert twist_power_delta(S04, "alpha", 2) == [[0, 2, 2], [2, 8, 12], [2, 4, 8]]
    assert twist_power_delta(S04, "alpha", 0) == ID


@pytest.mark.parametrize("zeta, c", [("alpha", (0, 1)), ("beta", (1, 0)), ("gamma", (1, 2))])
@pytest.mark.parametrize("k", [-3, -1, 1, 2, 5, 17])
def test_twist_powers_match_oracle(zeta, c, k):
    assert twist_power_delta(S04, zeta, k) == _delta_oracle(c, k)


def test_alpha_powers_grow_linearly():
    k = 10 ** 12
    M = twist_power_delta(S04, "alpha", k)
    assert M[1][1] == 4 * k


@pytest.mark.parametrize("dv, ok", [((0, 2, 2), True), ((0, 0, 0), True), ((1, 0, 0), False),
                                    ((2, 0, 4), True), ((2, 2, 2), True), ((2, 2, 8), False),
                                    ((-2, 0, 4), False), ((2, 0), False)])
def test_validate(dv, ok):
    assert validate_delta(S04, dv)[0] is ok


def test_validate_strict_empty():
    assert validate_delta(S04, (0, 0, 0), strict=True)[0] is False


def test_parity_reason():
    ok, why = validate_delta(S04, (1, 0, 0))
    assert not ok and "even" in why


def test_exhaustive_small_models_have_even_entries():
    # every small curve has even Delta entries, so odd vectors are never realised
    seen = {curve_delta((p, q)) for p in range(0, 12) for q in range(-12, 13) if (p, q) != (0, 0)}
    assert all(x % 2 == 0 for dv in seen for x in dv)
    assert (1, 0, 0) not in seen


@given(curves(80))
def test_roundtrip(c):
    back = delta_to_curve(curve_delta(c))
    assert back in (c, (-c[0], -c[1]))


def test_invalid_raises():
    with pytest.raises(InvalidCoordinates):
        delta_to_curve((2, 2, 8))


def test_mst():
    assert delta_to_mst(S04, (0, 2, 2)) == [(0, 0)]
    assert delta_to_mst(S04, (2, 0, 4)) == [(2, 0)]
    # T_alpha(beta) = gamma: one strand pair, one full twist of two strands
    assert delta_to_mst(S04, (2, 4, 0)) == [(2, 2)]
    assert mt_of((0, -3)) == (0, 3)


def test_unsupported_surface():
    with pytest.raises(UnsupportedSurface):
        delta_identity(surface_of(1, 2))
    with pytest.raises(UnsupportedSurface):
        twist_power_delta(surface_of(0, 5), "alpha", 1)


def test_standard_pair_alpha_beta_is_crossing():
    wp = standard_pair_from_delta(S04, (0, 2, 2), (2, 0, 4))
    assert wp.pair.is_crossing
    assert naive_intersection(wp) == 2


def test_diagonal_pair():
    wp = standard_pair_from_delta(S04, (2, 0, 4), (2, 0, 4))
    assert naive_intersection(wp) == 0


def test_standard_pair_count():
    assert standard_pair_count(2) == 14 ** 3 * 16 ** 2
    assert standard_pair_count(3) == 14 ** 6 * 16 ** 4
    with pytest.raises(ValueError):
        standard_pair_count(1)
