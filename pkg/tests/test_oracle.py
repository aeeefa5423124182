from dataclasses import replace
from math import comb
import numpy as np
import pytest

from dpalr import (
    SolverConfig,
    ProfileStore,
    CandidateSet,
    DiversityPreference,
    OracleResult,
    OracleBudgetError,
    exhaustive_optimal,
    objective_difference,
    recommendation_overlap,
    solve_user,
    build_candidate_profile_matrix,
    get_instance_context,
    context_objective,
    to_decision,
)
from .instances import random_instance


def test_karen_optimum(karen_bundle):
    instance = karen_bundle.instance("Karen")
    result = exhaustive_optimal(instance.preferences, instance.matrices, 4)
    assert result.optimal_selection == (0, 1, 3, 4)
    assert result.optimal_objective == pytest.approx(0.9437, abs=1e-4)
    assert result.subsets_evaluated == comb(6, 4)


@pytest.mark.parametrize("seed", range(5))
def test_optimum_dominates_iterative_solution(seed):
    rng = np.random.default_rng(seed)
    instance, _ = random_instance(rng, 10, dimension_sizes=(4, 5, 3))
    result = exhaustive_optimal(instance.preferences, instance.matrices, 4)
    recommendation = solve_user(instance, 4, SolverConfig())
    assert result.optimal_objective >= recommendation.objective_value - 1e-9
    assert result.subsets_evaluated == comb(10, 4)


def test_optimal_objective_is_the_objective_of_the_selection():
    rng = np.random.default_rng(3)
    instance, _ = random_instance(rng, 9)
    result = exhaustive_optimal(instance.preferences, instance.matrices, 3)
    context = get_instance_context(instance)
    assert context_objective(
        context, to_decision(list(result.optimal_selection), 9)
    ) == pytest.approx(result.optimal_objective)


def test_budget():
    rng = np.random.default_rng(0)
    instance, _ = random_instance(rng, 12)
    with pytest.raises(OracleBudgetError):
        exhaustive_optimal(instance.preferences, instance.matrices, 6, budget=100)


def test_identical_candidates_pick_first_subset():
    m, k = 6, 3
    candidates = CandidateSet(
        "me", tuple(f"c{q}" for q in range(m)), tuple([0.5] * m)
    )
    profiles = ProfileStore.from_triples(
        [(f"c{q}", "major", "IS") for q in range(m)]
    )
    prefs = [DiversityPreference("me", 0, np.array([4]))]
    matrices = [build_candidate_profile_matrix(candidates, profiles, 0)]
    result = exhaustive_optimal(prefs, matrices, k)
    assert result.optimal_selection == (0, 1, 2)
    assert result.optimal_objective == pytest.approx(1.0)


def test_objective_difference_and_overlap(karen_bundle):
    instance = karen_bundle.instance("Karen")
    recommendation = solve_user(instance, 4, SolverConfig())
    oracle = OracleResult((0, 1, 3, 4), 1.9382, 15)
    approx = replace(
        recommendation, objective_value=1.9012, selected_indices=[0, 1, 2, 4]
    )
    assert objective_difference(approx, oracle) == pytest.approx(1.909, abs=1e-3)
    assert recommendation_overlap(approx, oracle) == 3
    assert objective_difference(approx, OracleResult((0,), 0.0, 1)) is None


def test_identity_instance_tie_break():
    candidates = CandidateSet("me", ("a", "b", "c", "d"), (0.4, 0.3, 0.2, 0.1))
    profiles = ProfileStore.from_triples(
        [(c, "major", f"v{q}") for q, c in enumerate(candidates.candidates)]
    )
    prefs = [DiversityPreference("me", 0, np.array([5, 1, 1, 1]))]
    matrices = [build_candidate_profile_matrix(candidates, profiles, 0)]
    result = exhaustive_optimal(prefs, matrices, 2)
    assert result.optimal_selection == (0, 1)
    assert result.optimal_objective == pytest.approx(6 / (np.sqrt(28) * np.sqrt(2)))
    assert result.subsets_evaluated == 6
