import itertools

import numpy as np
import pytest

from mewvote import (
    GenSpec,
    MallowsModel,
    PartialChain,
    PartitionedPreference,
    ValidationError,
    generate,
    kendall_tau,
    mallows_probability,
    serialize_profile,
    validate,
)
from mewvote.generators import _rsm_poset


@pytest.mark.parametrize("kind,extra", [
    ("poset", {}),
    ("partitioned_full", {"k": 3}),
    ("partitioned_partial", {"k": 3}),
    ("chain", {"k": 4}),
    ("truncated", {"t": 2, "b": 1}),
    ("mallows", {}),
    ("rim", {}),
    ("rsm", {}),
    ("mallows_po", {}),
    ("mallows_fp", {"k": 2}),
    ("mallows_tr", {"t": 1, "b": 1}),
])
def test_generated_structures_are_valid(kind, extra):
    prof = generate(GenSpec(kind=kind, m=6, n=12, phi=0.6, p_max=0.4, seed=5, **extra))
    assert prof.n == 12
    for v in prof.voters:
        if v.observation is not None:
            validate(v.observation, prof.candidates)


def test_same_seed_gives_identical_bytes():
    spec = GenSpec(kind="poset", m=7, n=25, phi=0.4, p_max=0.3, seed=12)
    assert serialize_profile(generate(spec)) == serialize_profile(generate(spec))


def test_different_seed_changes_profile():
    a = GenSpec(kind="poset", m=7, n=25, phi=0.4, p_max=0.3, seed=12)
    b = GenSpec(kind="poset", m=7, n=25, phi=0.4, p_max=0.3, seed=13)
    assert serialize_profile(generate(a)) != serialize_profile(generate(b))


def test_adding_voters_preserves_earlier_ones():
    small = generate(GenSpec(kind="poset", m=6, n=5, phi=0.5, p_max=0.3, seed=7))
    large = generate(GenSpec(kind="poset", m=6, n=9, phi=0.5, p_max=0.3, seed=7))
    assert large.voters[:5] == small.voters


def test_zero_edge_probability_gives_empty_posets():
    prof = generate(GenSpec(kind="poset", m=6, n=10, phi=0.5, p_max=0.0, seed=3))
    assert all(v.observation is None for v in prof.voters)


def test_certain_edges_give_total_orders():
    rng = np.random.default_rng(0)
    poset = _rsm_poset(6, 0.5, 1.0, rng, edge_probs=np.ones(5))
    assert len(poset.pairs) == 15  # every pair emitted: a complete order


def test_full_partition_with_m_buckets_is_a_ranking():
    prof = generate(GenSpec(kind="partitioned_full", m=5, n=8, k=5, seed=2))
    for v in prof.voters:
        assert all(len(b) == 1 for b in v.observation.buckets)


def test_single_bucket_carries_no_information():
    prof = generate(GenSpec(kind="partitioned_full", m=5, n=8, k=1, seed=2))
    for v in prof.voters:
        assert len(v.observation.buckets) == 1


def test_buckets_are_never_empty():
    for seed in range(40):
        prof = generate(GenSpec(kind="partitioned_partial", m=6, n=5, k=3, seed=seed))
        for v in prof.voters:
            assert all(len(b) >= 1 for b in v.observation.buckets)


def test_full_length_chain_is_a_complete_ranking():
    prof = generate(GenSpec(kind="chain", m=5, n=6, k=5, seed=4))
    for v in prof.voters:
        assert isinstance(v.observation, PartialChain)
        assert sorted(v.observation.chain) == list(range(5))


def test_truncated_covering_everything_is_a_complete_ranking():
    prof = generate(GenSpec(kind="truncated", m=5, n=6, t=3, b=2, seed=4))
    for v in prof.voters:
        assert len(v.observation.middle(5)) == 0


def test_combined_profiles_share_model_with_private_observations():
    prof = generate(GenSpec(kind="mallows_po", m=6, n=20, phi=0.7, p_max=0.8, seed=9))
    models = {v.model for v in prof.voters}
    assert models == {MallowsModel(tuple(range(6)), 0.7)}
    assert any(v.observation is not None for v in prof.voters)
    prof_fp = generate(GenSpec(kind="mallows_fp", m=6, n=10, phi=0.7, k=2, seed=9))
    assert all(isinstance(v.observation, PartitionedPreference) for v in prof_fp.voters)
    assert all(v.observation.is_fully_partitioned(6) for v in prof_fp.voters)


def test_mallows_samples_have_expected_distance():
    m, phi, n = 4, 0.5, 10_000
    model = MallowsModel(tuple(range(m)), phi)
    probs = {r: mallows_probability(r, model) for r in itertools.permutations(range(m))}
    mean = sum(p * kendall_tau(model.sigma, r) for r, p in probs.items())
    var = sum(p * (kendall_tau(model.sigma, r) - mean) ** 2 for r, p in probs.items())
    from mewvote import sample

    rng = np.random.default_rng(17)
    draws = [kendall_tau(model.sigma, sample(model, rng)) for _ in range(n)]
    assert abs(np.mean(draws) - mean) < 3 * np.sqrt(var / n)


def test_parameter_validation():
    with pytest.raises(ValidationError):
        GenSpec(kind="nope", m=5, n=3)
    with pytest.raises(ValidationError):
        GenSpec(kind="poset", m=5, n=3, phi=0.0)
    with pytest.raises(ValidationError):
        GenSpec(kind="truncated", m=5, n=3, t=4, b=2)
    from mewvote import InvalidK

    with pytest.raises(InvalidK):
        GenSpec(kind="chain", m=5, n=3, k=9)
