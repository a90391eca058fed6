import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.intersection import naive_shorten
from artifact.standard import S04, s04_pair
from artifact.traintrack import (
    SIGMA,
    TAU,
    Surface,
    TrackError,
    WeightedPair,
    check_tight,
    check_weighting,
    classify,
    colour_changes,
    crossing_matrix,
    crossing_pairing,
    crossing_sum,
    is_legal_region,
    region_index4,
)

from conftest import curves, iota, pair_of


def test_surface_constants():
    assert (S04.B, S04.C, S04.D, S04.E) == (6, 20736, 20737, 41474)
    assert S04.F == 7 * 6 * 41474
    assert Surface(2, 0).B == 18


def test_small_surfaces_rejected():
    with pytest.raises(ValueError):
        Surface(0, 3)


@pytest.mark.parametrize("word, want", [("gVgV", 0), ("r-", 4), ("rLbLrLb-", 1)])
def test_region_index4(word, want):
    assert region_index4(word) == want


def test_region_index_annulus_correction():
    assert region_index4(["r-", "b-"], chi=0) == 0


def test_malformed_region_word():
    with pytest.raises(TrackError):
        region_index4("rX")


def test_colour_changes_wraps():
    assert colour_changes("r-g-b-g-") == 2


def test_legality_examples():
    assert not is_legal_region("rVrV")
    assert is_legal_region("r-bVrV")
    assert is_legal_region("rVrVrV")


class FakeSwitch:
    def switches(self, X):
        return [(0, (0, 1, 2))]


@pytest.mark.parametrize("w, ok", [((5, 2, 3), True), ((5, 2, 2), False), ((0, 0, 0), True),
                                   ((1, 2, -1), False)])
def test_check_weighting(w, ok):
    assert check_weighting(FakeSwitch(), SIGMA, w) is ok


def _crossing(a, b):
    return naive_shorten(pair_of(a, b))[0]


def test_alpha_beta_crossing_pair():
    wp = pair_of((0, 1), (1, 0))
    assert wp.pair.is_crossing
    assert classify(wp.pair) == (True, True, 0)
    assert crossing_pairing(wp) == 2


def test_crossing_sum_bilinear():
    wp = _crossing((0, 1), (1, 0))
    zero = WeightedPair(wp.pair, wp.mu, [0] * len(wp.nu))
    assert crossing_sum(zero) == 0
    M = crossing_matrix(wp.pair)
    (a, b), m = next(iter(M.items()))
    mu = [0] * len(wp.mu)
    nu = [0] * len(wp.nu)
    mu[a], nu[b] = 3, 5
    assert crossing_sum(WeightedPair(wp.pair, mu, nu)) == 15 * m


def test_weight_length_mismatch():
    wp = pair_of((0, 1), (1, 0))
    with pytest.raises(TrackError):
        WeightedPair(wp.pair, list(wp.mu) + [1], wp.nu)


@given(curves(32), curves(32))
def test_standard_pairs_are_tight_and_realizable(a, b):
    wp = pair_of(a, b)
    assert check_tight(wp.pair)
    assert wp.is_realizable()
    assert wp.pair.is_clean


@pytest.mark.parametrize("sigma, tau", [((0, 1), (2, 0)), ((2, 0), (2, 0)), ((2, 3), (0, 1)),
                                        ((4, 0), (2, 5)), ((0, 3), (0, 1))])
def test_template_subtracks_are_tight(sigma, tau):
    # zero weights drop template branches
    assert check_tight(s04_pair(sigma, tau).pair)


def test_content_equality_and_hash():
    p1, p2 = pair_of((3, 1), (1, 2)).pair, pair_of((3, 1), (1, 2)).pair
    assert p1 == p2 and hash(p1) == hash(p2)


def test_describe_mentions_every_edge():
    pair = pair_of((3, 1), (1, 2)).pair
    text = pair.describe()
    assert all(f"e{e} " in text for e in range(len(pair.col)))


@given(curves(16), curves(16))
def test_crossing_sum_of_terminal_pair_is_intersection(a, b):
    assert crossing_sum(_crossing(a, b)) == iota(a, b)


def test_branch_counts_match_weights():
    wp = pair_of((5, 2), (3, -1))
    assert len(wp.mu) == wp.pair.num_branches(SIGMA)
    assert len(wp.nu) == wp.pair.num_branches(TAU)
