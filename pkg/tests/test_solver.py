import numpy as np
import pytest

from dpalr import (
    SolverConfig,
    FixedInit,
    ProfileStore,
    CandidateSet,
    DiversityPreference,
    UserInstance,
    NoIncludedDimensionsError,
    build_candidate_profile_matrix,
    get_instance_context,
    context_objective,
    compute_errors,
    update_parameters,
    round_top_k,
    solve_user,
    solve_dpa,
    solve_relaxed,
    trace_residuals,
    construction_residuals,
    exhaustive_optimal,
    dpa_objective,
    is_feasible,
    uniform_point,
    project_capped_simplex,
)
from .instances import random_instance

KAREN_OPTIMUM = 0.9437


def test_karen_recommendation(karen_bundle):
    instance = karen_bundle.instance("Karen")
    recommendation = solve_user(instance, 4, SolverConfig())
    assert recommendation.trace.converged
    assert len(set(recommendation.selected)) == 4
    assert set(recommendation.selected) <= set(instance.candidates.candidates)
    assert 0.93 <= recommendation.objective_value <= KAREN_OPTIMUM + 1e-4
    assert is_feasible(recommendation.relaxed_solution, 4)


def test_solve_dpa_matches_instance_solve(karen_bundle):
    instance = karen_bundle.instance("Karen")
    config = SolverConfig(init_seed=3)
    from_instance = solve_user(instance, 4, config)
    from_parts = solve_dpa(
        instance.preferences, instance.candidates, karen_bundle.profiles, 4, config
    )
    assert from_parts.selected == from_instance.selected
    assert from_parts.objective_value == pytest.approx(from_instance.objective_value)


@pytest.mark.parametrize("seed", range(5))
def test_errors_vanish_after_update(seed):
    rng = np.random.default_rng(seed)
    instance, _ = random_instance(rng, 10)
    context = get_instance_context(instance)
    y = project_random(rng, 10, 3)
    update = update_parameters(y, context)
    assert update.degenerate == []
    assert np.max(np.abs(compute_errors(y, update.gamma, update.beta, context))) < 1e-12
    assert np.all(update.beta >= 0)


def project_random(rng, m, k):
    return project_capped_simplex(rng.random(m) * 2, k)


def _sparse_dimension_instance():
    """Dimension 1 is held only by candidate c0"""
    candidates = CandidateSet("me", ("c0", "c1", "c2", "c3"), (0.4, 0.3, 0.2, 0.1))
    profiles = ProfileStore.from_triples(
        [
            ("c0", "a", "x"),
            ("c1", "a", "y"),
            ("c2", "a", "x"),
            ("c3", "a", "y"),
            ("c0", "b", "z"),
        ]
    )
    preferences = [
        DiversityPreference("me", 0, np.array([2, 1])),
        DiversityPreference("me", 1, np.array([3])),
    ]
    matrices = [build_candidate_profile_matrix(candidates, profiles, h) for h in range(2)]
    return UserInstance(candidates, preferences, matrices, profiles.dimensions)


def test_degenerate_dimension_keeps_parameters():
    context = get_instance_context(_sparse_dimension_instance())
    y = np.array([0.0, 1.0, 1.0, 0.0])
    previous_gamma = np.array([0.3, 0.7])
    previous_beta = np.array([0.2, 0.9])
    update = update_parameters(y, context, previous_gamma, previous_beta)
    assert update.degenerate == [1]
    assert update.gamma[1] == 0.7
    assert update.beta[1] == 0.9
    assert update.gamma[0] == pytest.approx(1 / np.sqrt(2))

    with pytest.raises(ValueError):
        update_parameters(y, context)


def test_dimension_without_selected_holder_contributes_zero():
    context = get_instance_context(_sparse_dimension_instance())
    y = np.array([0.0, 1.0, 1.0, 0.0])
    assert context_objective(context, y) == pytest.approx(
        (2 + 1) / (np.sqrt(5) * np.sqrt(2))
    )


def test_round_top_k_ties():
    relaxed = np.array([0.5, 0.5 + 1e-12, 0.9, 0.5])
    likelihoods = np.array([0.1, 0.2, 0.0, 0.2])
    assert round_top_k(relaxed, 3, likelihoods) == [2, 1, 3]
    assert round_top_k(relaxed, 4, likelihoods) == [2, 1, 3, 0]


def test_round_top_k_rejects_list_size():
    with pytest.raises(ValueError):
        round_top_k(np.zeros(3), 4, np.zeros(3))


def test_full_list_is_trivial(karen_bundle):
    instance = karen_bundle.instance("Karen")
    recommendation = solve_user(instance, instance.m, SolverConfig())
    assert sorted(recommendation.selected_indices) == list(range(instance.m))
    assert recommendation.trace.iterations == []
    assert recommendation.trace.converged


@pytest.mark.parametrize("k", [0, 7])
def test_invalid_list_size(karen_bundle, k):
    with pytest.raises(ValueError):
        solve_user(karen_bundle.instance("Karen"), k, SolverConfig())


def test_no_included_dimensions():
    rng = np.random.default_rng(0)
    instance, _ = random_instance(rng, 6, zero_dimensions=(0, 1))
    with pytest.raises(NoIncludedDimensionsError):
        solve_user(instance, 2, SolverConfig())


def test_zero_dimension_is_excluded():
    rng = np.random.default_rng(1)
    instance, _ = random_instance(rng, 8, dimension_sizes=(4, 5, 3), zero_dimensions=(1,))
    recommendation = solve_user(instance, 3, SolverConfig())
    assert recommendation.trace.excluded_dimensions == [1]
    assert recommendation.trace.h_effective == 2


@pytest.mark.parametrize("seed", range(5))
def test_converged_solves_are_stationary(seed):
    rng = np.random.default_rng(seed)
    instance, _ = random_instance(rng, 10)
    context = get_instance_context(instance)
    trace = solve_relaxed(context, 3, SolverConfig(init_seed=seed))
    if trace.converged:
        assert trace_residuals(trace, context, 3).below(1e-3)
    assert all(residual < 1e-10 for residual in construction_residuals(trace, context))
    for record in trace.iterations:
        assert is_feasible(record.y, 3)
        assert len(record.delta) == 2 * context.h_effective


@pytest.mark.parametrize("seed", range(5))
def test_single_dimension_independent_of_initial_parameters(seed):
    rng = np.random.default_rng(seed)
    instance, _ = random_instance(rng, 9, dimension_sizes=(6,))
    context = get_instance_context(instance)
    values = []
    for init_seed in range(5):
        trace = solve_relaxed(context, 3, SolverConfig(init_seed=init_seed, epsilon=1e-6))
        assert trace.converged
        values.append(context_objective(context, trace.iterations[trace.best_iteration].y))
    assert max(values) - min(values) < 1e-4


def test_fixed_initial_parameters(karen_bundle):
    instance = karen_bundle.instance("Karen")
    config = SolverConfig(init_mode=FixedInit(gamma=2.0, beta=0.1))
    trace = solve_user(instance, 4, config).trace
    assert np.all(trace.iterations[0].gamma == 2.0)
    assert np.all(trace.iterations[0].beta == 0.1)


def test_recommendation_never_beats_optimum():
    rng = np.random.default_rng(11)
    for _ in range(5):
        instance, _ = random_instance(rng, 9)
        recommendation = solve_user(instance, 3, SolverConfig())
        oracle = exhaustive_optimal(instance.preferences, instance.matrices, 3)
        assert recommendation.objective_value <= oracle.optimal_objective + 1e-9


def test_iteration_cap_returns_best_iterate(karen_bundle):
    instance = karen_bundle.instance("Karen")
    trace = solve_user(
        instance, 4, SolverConfig(max_outer_iterations=1, epsilon=1e-12)
    ).trace
    assert not trace.converged
    assert trace.iteration_count == 1
    assert trace.best_iteration == 0


def test_uniform_start():
    assert uniform_point(4, 2).tolist() == [0.5, 0.5, 0.5, 0.5]


def _unheld_dimension_instance(empty: tuple[str, ...]):
    """Dimensions named in empty hold a value only a friend has, none of c0..c3"""
    candidates = CandidateSet("me", ("c0", "c1", "c2", "c3"), (0.4, 0.3, 0.2, 0.1))
    triples = [("f1", "b", "w"), ("f1", "a", "w")]
    if "a" not in empty:
        triples += [("c0", "a", "x"), ("c1", "a", "y"), ("c2", "a", "x"), ("c3", "a", "y")]
    profiles = ProfileStore.from_triples(triples, dimensions=("a", "b"))
    preferences = [
        DiversityPreference("me", h, np.ones(profiles.size(h), dtype=int))
        for h in range(2)
    ]
    matrices = [build_candidate_profile_matrix(candidates, profiles, h) for h in range(2)]
    return UserInstance(candidates, preferences, matrices, profiles.dimensions)


def test_dimension_no_candidate_holds_is_left_out_of_iteration():
    instance = _unheld_dimension_instance(empty=("b",))
    recommendation = solve_user(instance, 2, SolverConfig())
    trace = recommendation.trace
    assert trace.converged
    assert trace.empty_dimensions == [1]
    assert trace.h_effective == 2
    assert all(len(record.delta) == 2 for record in trace.iterations)

    context = get_instance_context(instance)
    assert trace_residuals(trace, context, 2).below(1e-3)


def test_no_candidate_holds_any_value():
    recommendation = solve_user(
        _unheld_dimension_instance(empty=("a", "b")), 2, SolverConfig()
    )
    assert recommendation.trace.iteration_count == 0
    assert recommendation.trace.empty_dimensions == [0, 1]
    assert recommendation.selected == ["c0", "c1"]
    assert recommendation.objective_value == 0.0


@pytest.mark.parametrize("scale", [2, 10, 0.5])
def test_preference_scale_changes_nothing(scale):
    rng = np.random.default_rng(4)
    instance, profiles = random_instance(rng, 8)
    scaled = [
        DiversityPreference(pref.user, pref.dimension, pref.counts * scale)
        for pref in instance.preferences
    ]
    for _ in range(10):
        y = project_random(rng, 8, 3)
        assert dpa_objective(scaled, instance.matrices, y) == pytest.approx(
            dpa_objective(instance.preferences, instance.matrices, y)
        )
    config = SolverConfig(init_seed=1)
    assert (
        solve_dpa(scaled, instance.candidates, profiles, 3, config).selected
        == solve_user(instance, 3, config).selected
    )


def test_candidate_order_changes_nothing():
    rng = np.random.default_rng(6)
    instance, profiles = random_instance(rng, 8)
    order = rng.permutation(8)
    candidates = instance.candidates
    shuffled = CandidateSet(
        candidates.user,
        tuple(candidates.candidates[q] for q in order),
        tuple(candidates.likelihoods[q] for q in order),
    )
    matrices = [
        build_candidate_profile_matrix(shuffled, profiles, h) for h in range(profiles.H)
    ]
    for _ in range(10):
        y = project_random(rng, 8, 3)
        assert dpa_objective(instance.preferences, matrices, y[order]) == pytest.approx(
            dpa_objective(instance.preferences, instance.matrices, y)
        )
