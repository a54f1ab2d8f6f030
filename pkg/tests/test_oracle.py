import math

import numpy as np
import pytest
from conftest import random_poset, random_supported_profile

from mewvote import (
    PartialChain,
    PartialOrder,
    Profile,
    TooLarge,
    Voter,
    candidate_set,
    linear_extensions,
    load_profile,
    make_rule,
)
from mewvote.oracle import (
    count_worlds,
    enumerate_worlds,
    fcp_count,
    meta_profile,
    meta_scores,
    oracle_expected_scores,
    oracle_mpw,
)


def test_two_voter_profile_has_four_worlds(data_dir):
    prof = load_profile(data_dir / "fig1.profile")
    worlds = list(enumerate_worlds(prof))
    assert len(worlds) == 4
    assert sorted(round(w.prob, 10) for w in worlds) == [0.15, 0.15, 0.35, 0.35]
    assert sum(w.prob for w in worlds) == pytest.approx(1.0, abs=1e-12)


def test_point_mass_profile_has_one_world():
    prof = Profile(candidate_set("a", "b"), [Voter(None, PartialChain((1, 0)))])
    worlds = list(enumerate_worlds(prof))
    assert len(worlds) == 1
    assert worlds[0].prob == pytest.approx(1.0)
    assert worlds[0].rankings == ((1, 0),)


def test_poset_profile_has_two_worlds(data_dir):
    prof = load_profile(data_dir / "election4.profile")
    worlds = list(enumerate_worlds(prof))
    assert len(worlds) == 2
    assert all(w.prob == pytest.approx(0.5, abs=1e-12) for w in worlds)


def test_world_cap():
    prof = Profile(candidate_set(*"abcdef"), [Voter() for _ in range(5)])
    with pytest.raises(TooLarge):
        list(enumerate_worlds(prof, cap=1000))
    assert count_worlds(prof) == 720 ** 5


def test_world_cap_env_override(monkeypatch):
    prof = Profile(candidate_set(*"abcde"), [Voter() for _ in range(2)])  # 120**2 worlds
    monkeypatch.setenv("MEW_ENUM_CAP", "100")
    with pytest.raises(TooLarge):
        list(enumerate_worlds(prof))
    monkeypatch.setenv("MEW_ENUM_CAP", "20000")
    assert len(list(enumerate_worlds(prof))) == 120 ** 2


def test_fcp_single_pair():
    p = PartialOrder([(0, 1)])
    assert fcp_count(0, 1, p, 3) == 2


def test_fcp_empty_poset_symmetry():
    p = PartialOrder([])
    for m in (3, 4, 5):
        for j in range(1, m + 1):
            assert fcp_count(0, j, p, m) == math.factorial(m - 1)


def test_fcp_counts_partition_extensions():
    rng = np.random.default_rng(41)
    for _ in range(20):
        m = int(rng.integers(3, 7))
        p = random_poset(rng, m)
        n_ext = len(linear_extensions(p, m))
        for c in range(m):
            assert sum(fcp_count(c, j, p, m) for j in range(1, m + 1)) == n_ext


def test_expected_scores_on_two_voter_profile(data_dir):
    prof = load_profile(data_dir / "fig1.profile")
    plur = oracle_expected_scores(prof, make_rule("plurality", 3))
    assert np.allclose(plur, [0.7, 0.8, 0.5], atol=1e-12)
    borda = oracle_expected_scores(prof, make_rule("borda", 3))
    assert borda[1] == pytest.approx(2.8, abs=1e-12)


def test_expected_score_conservation():
    rng = np.random.default_rng(42)
    for _ in range(10):
        prof = random_supported_profile(rng, world_budget=300)
        rule = make_rule("borda", prof.m)
        scores = oracle_expected_scores(prof, rule)
        n_total = sum(v.weight for v in prof.voters)
        assert scores.sum() == pytest.approx(n_total * sum(rule.scores), rel=1e-9)


def test_mpw_probabilities(data_dir):
    prof = load_profile(data_dir / "fig1.profile")
    wins = oracle_mpw(prof, make_rule("plurality", 3))
    assert np.allclose(wins, [0.7, 0.65, 0.5], atol=1e-12)
    election = load_profile(data_dir / "election4.profile")
    wins4 = oracle_mpw(election, make_rule("plurality", 4))
    assert wins4[0] == pytest.approx(1.0, abs=1e-12)  # first candidate always co-wins


def test_point_mass_winner_has_probability_one():
    prof = Profile(candidate_set("a", "b", "c"), [Voter(None, PartialChain((2, 0, 1)))])
    wins = oracle_mpw(prof, make_rule("plurality", 3))
    assert wins[2] == pytest.approx(1.0)


def test_meta_profile_scores_match_expected_scores():
    rng = np.random.default_rng(43)
    for _ in range(50):
        prof = random_supported_profile(rng, world_budget=200)
        rule = make_rule("borda", prof.m)
        meta = meta_profile(prof)
        assert np.allclose(meta_scores(meta, rule, prof.m),
                           oracle_expected_scores(prof, rule), atol=1e-9)


def test_meta_profile_of_uniform_voter():
    prof = Profile(candidate_set("a", "b", "c"), [Voter()])
    meta = meta_profile(prof)
    assert len(meta) == 6
    assert all(w == pytest.approx(1 / 6, abs=1e-12) for _, w in meta)
