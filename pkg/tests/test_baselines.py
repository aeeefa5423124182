import numpy as np
import pytest

from dpalr import (
    ProfileStore,
    CandidateSet,
    jaccard_dissimilarity,
    profile_dissimilarity,
    pairwise_dissimilarity,
    normalize_likelihoods,
    top_k_by_likelihood,
    mmr_select,
    msd_select,
    msd_select_with_scores,
    msd_objective,
    dpp_select,
    build_kernel,
    greedy_map,
    direc_select,
    k_center_clusters,
    dpa_mmr_select,
    get_instance_context,
    context_objective,
    to_decision,
)
from .instances import random_instance


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ({1, 2}, {2, 3}, 2 / 3),
        ({1, 2}, {1, 2, 3, 4}, 0.5),
        ({1}, {1}, 0.0),
        ({1}, {2}, 1.0),
        (set(), set(), 0.0),
    ],
)
def test_jaccard_dissimilarity(a, b, expected):
    assert jaccard_dissimilarity(frozenset(a), frozenset(b)) == pytest.approx(expected)


def test_pairwise_matrix_agrees_with_pairs():
    rng = np.random.default_rng(0)
    instance, profiles = random_instance(rng, 7)
    candidates = instance.candidates.candidates
    dis = pairwise_dissimilarity(profiles, candidates)
    for i, a in enumerate(candidates):
        for j, b in enumerate(candidates):
            expected = 0.0 if i == j else profile_dissimilarity(profiles, a, b)
            assert dis.matrix[i, j] == pytest.approx(expected)


def test_normalize_likelihoods():
    assert normalize_likelihoods(np.array([0.2, 0.6, 0.4])).tolist() == pytest.approx(
        [0.0, 1.0, 0.5]
    )
    assert normalize_likelihoods(np.array([0.3, 0.3])).tolist() == [1.0, 1.0]


def test_top_k_ties_by_position():
    assert top_k_by_likelihood(np.array([0.5, 0.9, 0.5, 0.1]), 3) == [1, 0, 2]


@pytest.mark.parametrize("select", [mmr_select, msd_select, dpp_select])
def test_accuracy_only_weight_is_top_k(select):
    rng = np.random.default_rng(42)
    for _ in range(100):
        instance, profiles = random_instance(rng, 8)
        expected = top_k_by_likelihood(instance.likelihoods, 3)
        assert select(instance.candidates, profiles, 0.0, 3) == expected


def test_dpa_mmr_accuracy_only_is_top_k():
    rng = np.random.default_rng(43)
    for _ in range(100):
        instance, profiles = random_instance(rng, 8)
        expected = top_k_by_likelihood(instance.likelihoods, 3)
        assert (
            dpa_mmr_select(instance.preferences, instance.candidates, profiles, 0.0, 3)
            == expected
        )


def test_mmr_diversity_only():
    candidates = CandidateSet("me", ("a", "b", "c"), (0.9, 0.5, 0.1))
    profiles = ProfileStore.from_triples(
        [("a", "major", "IS"), ("b", "major", "IS"), ("c", "major", "CS")]
    )
    # first pick is the most likely, then the candidate least like it
    assert mmr_select(candidates, profiles, 1.0, 2) == [0, 2]
    assert mmr_select(candidates, profiles, 0.0, 2) == [0, 1]


def test_msd_greedy_objective_never_decreases():
    rng = np.random.default_rng(5)
    instance, profiles = random_instance(rng, 10)
    theta = 0.6
    selected, gains = msd_select_with_scores(instance.candidates, profiles, theta, 5)
    likelihoods = normalize_likelihoods(instance.likelihoods)
    dis = pairwise_dissimilarity(profiles, instance.candidates.candidates).matrix
    values = [
        msd_objective(likelihoods, dis, selected[:i], theta) for i in range(1, 6)
    ]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(sum(gains))


def test_dpp_identity_similarity_is_top_k():
    rng = np.random.default_rng(8)
    likelihoods = rng.random(9)
    kernel = build_kernel(likelihoods, np.eye(9), theta=0.5)
    assert greedy_map(kernel, 4)[0] == top_k_by_likelihood(likelihoods, 4)


@pytest.mark.parametrize("theta", [0.2, 0.5, 1.0])
@pytest.mark.parametrize("seed", range(5))
def test_dpp_kernel_is_symmetric_and_positive_semidefinite(seed, theta):
    rng = np.random.default_rng(seed)
    instance, profiles = random_instance(rng, 12, dimension_sizes=(3, 4, 5))
    dis = pairwise_dissimilarity(profiles, instance.candidates.candidates)
    kernel = build_kernel(
        normalize_likelihoods(instance.likelihoods), dis.similarity, theta=theta
    )
    assert np.allclose(kernel, kernel.T)
    assert np.linalg.eigvalsh(kernel).min() >= -1e-8


@pytest.mark.parametrize("theta", [0.0, -0.5, 1.5])
def test_kernel_needs_theta_in_unit_interval(theta):
    with pytest.raises(ValueError):
        build_kernel(np.ones(3), np.eye(3), theta=theta)


def test_kernel_must_be_positive_semidefinite():
    similarity = np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 1.0]])
    with pytest.raises(ValueError):
        build_kernel(np.ones(3), similarity, theta=1.0)


@pytest.mark.parametrize("seed", range(5))
def test_dpp_greedy_gains_are_log_determinant_gains(seed):
    rng = np.random.default_rng(seed)
    instance, profiles = random_instance(rng, 8)
    dis = pairwise_dissimilarity(profiles, instance.candidates.candidates)
    kernel = build_kernel(
        normalize_likelihoods(instance.likelihoods), dis.similarity, theta=0.5
    )
    selected, gains = greedy_map(kernel, 4)
    for step in range(4):
        before = selected[:step]
        previous = np.linalg.slogdet(kernel[np.ix_(before, before)])[1] if before else 0.0
        dense_gains = {}
        for q in range(8):
            if q in before:
                continue
            subset = before + [q]
            dense_gains[q] = np.linalg.slogdet(kernel[np.ix_(subset, subset)])[1] - previous
        assert gains[step] == pytest.approx(dense_gains[selected[step]], abs=1e-5)
        assert dense_gains[selected[step]] >= max(dense_gains.values()) - 1e-6


def test_direc_full_list_returns_everyone():
    rng = np.random.default_rng(2)
    instance, profiles = random_instance(rng, 6)
    assert sorted(direc_select(instance.candidates, profiles, 6)) == list(range(6))


def test_direc_two_groups():
    candidates = CandidateSet("me", ("a1", "a2", "b1", "b2"), (0.3, 0.9, 0.8, 0.1))
    profiles = ProfileStore.from_triples(
        [
            ("a1", "major", "IS"),
            ("a2", "major", "IS"),
            ("b1", "major", "CS"),
            ("b2", "major", "CS"),
        ]
    )
    dis = pairwise_dissimilarity(profiles, candidates.candidates).matrix
    assert k_center_clusters(dis, candidates.likelihood_array, 2) == [[0, 1], [2, 3]]
    assert direc_select(candidates, profiles, 2) == [1, 2]


def test_direc_identical_profiles():
    candidates = CandidateSet("me", ("a", "b", "c", "d"), (0.2, 0.4, 0.9, 0.1))
    profiles = ProfileStore.from_triples(
        [(user, "major", "IS") for user in candidates.candidates]
    )
    selected = direc_select(candidates, profiles, 3)
    assert len(set(selected)) == 3
    assert selected[0] == 2


def test_dpa_mmr_matching_only_first_pick():
    rng = np.random.default_rng(9)
    instance, profiles = random_instance(rng, 8)
    context = get_instance_context(instance)
    selected = dpa_mmr_select(instance.preferences, instance.candidates, profiles, 1.0, 3)
    singles = [context_objective(context, to_decision([q], 8)) for q in range(8)]
    assert singles[selected[0]] == pytest.approx(max(singles))
    assert len(set(selected)) == 3
