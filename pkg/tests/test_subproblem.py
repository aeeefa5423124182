import numpy as np
import pytest
from scipy import sparse
from scipy.optimize import minimize

from dpalr import (
    project_capped_simplex,
    is_feasible,
    uniform_point,
    SubproblemInstance,
    subproblem_objective,
    subproblem_gradient,
    solve_subproblem,
    get_instance_context,
)
from .instances import random_instance


def _slsqp_projection(v, k):
    m = v.size
    result = minimize(
        lambda y: 0.5 * np.sum((y - v) ** 2),
        np.full(m, k / m),
        jac=lambda y: y - v,
        bounds=[(0, 1)] * m,
        constraints=[{"type": "eq", "fun": lambda y: y.sum() - k}],
        method="SLSQP",
        options={"ftol": 1e-14, "maxiter": 500},
    )
    return result.x


def _random_subproblem(seed, m=10, k=3):
    rng = np.random.default_rng(seed)
    instance, _ = random_instance(rng, m)
    context = get_instance_context(instance)
    H = context.h_effective
    return SubproblemInstance(
        context.matrices,
        context.unit_prefs,
        0.1 + rng.random(H),
        rng.random(H),
        k,
        m,
    )


@pytest.mark.parametrize("seed", range(10))
def test_projection_is_feasible_and_idempotent(seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(scale=3, size=12)
    k = int(rng.integers(1, 12))
    y = project_capped_simplex(v, k)
    assert is_feasible(y, k)
    assert np.allclose(project_capped_simplex(y, k), y, atol=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_projection_matches_general_solver(seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=8)
    k = 3
    assert np.allclose(project_capped_simplex(v, k), _slsqp_projection(v, k), atol=1e-5)


@pytest.mark.parametrize("k, m", [(0, 5), (5, 5), (6, 5)])
def test_projection_rejects_list_sizes(k, m):
    with pytest.raises(ValueError):
        project_capped_simplex(np.zeros(m), k)


@pytest.mark.parametrize(
    "v, k, expected",
    [
        ([10.0, -10.0, 0.5], 1, [1.0, 0.0, 0.0]),
        ([0.5, 0.5], 1, [0.5, 0.5]),
    ],
)
def test_projection_examples(v, k, expected):
    assert np.allclose(project_capped_simplex(np.array(v), k), expected, atol=1e-9)


def test_projection_of_feasible_point_is_unchanged():
    y = uniform_point(6, 2)
    assert np.allclose(project_capped_simplex(y, 2), y)


@pytest.mark.parametrize("seed", range(5))
def test_subproblem_maximum_beats_random_feasible_points(seed):
    inst = _random_subproblem(seed)
    result = solve_subproblem(inst)
    assert result.converged
    assert is_feasible(result.y, inst.k)

    rng = np.random.default_rng(100 + seed)
    for _ in range(1000):
        point = project_capped_simplex(rng.random(inst.m) * 2, inst.k)
        assert subproblem_objective(inst, point) <= result.objective + 1e-7


@pytest.mark.parametrize("seed", range(5))
def test_subproblem_matches_general_solver(seed):
    inst = _random_subproblem(seed, m=8, k=3)
    result = solve_subproblem(inst)
    reference = minimize(
        lambda y: -subproblem_objective(inst, y),
        np.full(inst.m, inst.k / inst.m),
        jac=lambda y: -subproblem_gradient(inst, y),
        bounds=[(0, 1)] * inst.m,
        constraints=[{"type": "eq", "fun": lambda y: y.sum() - inst.k}],
        method="SLSQP",
        options={"ftol": 1e-12, "maxiter": 1000},
    )
    assert result.objective >= -reference.fun - 1e-5


@pytest.mark.parametrize("seed", range(3))
def test_subproblem_starts_agree(seed):
    inst = _random_subproblem(seed)
    rng = np.random.default_rng(seed)
    values = [
        solve_subproblem(inst, y_init=rng.random(inst.m) * 2).objective
        for _ in range(4)
    ]
    assert max(values) - min(values) < 1e-6


def test_gradient_matches_finite_differences():
    inst = _random_subproblem(7)
    y = uniform_point(inst.m, inst.k)
    gradient = subproblem_gradient(inst, y)
    step = 1e-6
    for q in range(inst.m):
        e = np.zeros(inst.m)
        e[q] = step
        numerical = (
            subproblem_objective(inst, y + e) - subproblem_objective(inst, y - e)
        ) / (2 * step)
        assert numerical == pytest.approx(gradient[q], abs=1e-5)


def test_invalid_parameters():
    inst = _random_subproblem(0)
    with pytest.raises(ValueError):
        SubproblemInstance(
            inst.matrices,
            inst.normalized_prefs,
            np.zeros_like(inst.gamma),
            inst.beta,
            inst.k,
            inst.m,
        )
    with pytest.raises(ValueError):
        SubproblemInstance(
            inst.matrices, inst.normalized_prefs, inst.gamma, -inst.beta - 1, inst.k, inst.m
        )


@pytest.mark.parametrize("seed", range(5))
def test_objective_is_concave_along_segments(seed):
    inst = _random_subproblem(seed)
    rng = np.random.default_rng(200 + seed)
    for _ in range(50):
        a = project_capped_simplex(rng.random(inst.m) * 2, inst.k)
        b = project_capped_simplex(rng.random(inst.m) * 2, inst.k)
        weight = rng.uniform(0.01, 0.99)
        chord = weight * subproblem_objective(inst, a) + (
            1 - weight
        ) * subproblem_objective(inst, b)
        assert subproblem_objective(inst, weight * a + (1 - weight) * b) >= chord - 1e-9


def test_one_short_of_full_list_on_identity():
    inst = SubproblemInstance(
        [sparse.csc_array(np.eye(3))],
        [np.array([1.0, 0.0, 0.0])],
        np.array([1.0]),
        np.array([0.5]),
        2,
        3,
    )
    result = solve_subproblem(inst)
    assert np.allclose(result.y, [1.0, 0.5, 0.5], atol=1e-6)
