import random

import pytest

from artifact.legality import (
    ANNULI,
    PANTS,
    SEEDS,
    MalformedWord,
    boundary_stats,
    compose_pants,
    enumerate_cut_disks,
    enumerate_standard_regions,
    is_legal,
    num_colour_changes,
    random_grammar_word,
    substitutes,
    tree,
)
from artifact.traintrack import colour_changes, is_legal_region, region_index4


def test_stats_examples():
    assert boundary_stats("gVgV") == (0, 0, True, True)
    assert num_colour_changes("r-g-b-g-") == 2
    assert boundary_stats("rLb-g-bL")[0] == 2


def test_malformed():
    with pytest.raises(MalformedWord):
        boundary_stats("rXb-")
    with pytest.raises(MalformedWord):
        boundary_stats("r")


def test_tables():
    assert len(SEEDS) == 4
    assert len(ANNULI) == 5
    assert len(PANTS[0]) == 3


def test_pruning_never_expands_bad_runs():
    for left, right in SEEDS:
        for w in (left, right):
            for new in substitutes(w):
                assert "r-g-r" not in new and "b-g-b" not in new


def test_substitution_at_first_gray_only():
    word = "rLb-g-bLg-"
    for new in substitutes(word):
        assert new.endswith("bLg-")


def test_cut_disks():
    report = enumerate_cut_disks()
    assert report["violations"] == []
    assert report["leaves"] > 0 and report["nodes"] >= report["leaves"]


def test_every_leaf_legal():
    for left, right in SEEDS:
        for leaf in tree(left, right):
            assert is_legal(leaf)


def test_standard_regions():
    report = enumerate_standard_regions()
    assert report["violations"] == []
    assert report["checked"] == sum(len(ANNULI) ** len(p) for p in PANTS)


def test_first_template_count():
    assert len(ANNULI) ** len(PANTS[0]) == 125


def test_empty_slots_give_annulus_words():
    for annuli in [("gV", "gV", "gV"), ("g-b-g-r-", "gV", "g-rLb-")]:
        word = compose_pants(("", "", ""), annuli)
        assert word == "".join(annuli)
        assert is_legal(word)


def test_agrees_with_traintrack_semantics():
    rng = random.Random(12)
    for _ in range(10 ** 4):
        w = random_grammar_word(rng, rng.randint(0, 6))
        idx, changes, bigon, mono = boundary_stats(w)
        assert idx == region_index4(w)
        assert changes == colour_changes(w)
        assert is_legal(w) == is_legal_region(w)
