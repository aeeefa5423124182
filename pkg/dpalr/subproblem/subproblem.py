"""Convex subproblem solved at every iteration of the outer parameter iteration.

For fixed gamma and beta maximize

    sum_h gamma_h (dbar_h^T C_h y - beta_h ||C_h y||)

over the capped simplex {0 <= y <= 1, sum(y) = k}. Every term is a linear function
minus a positive multiple of a norm so the objective is concave and projected
gradient ascent with an Armijo backtracking line search converges to the maximum.
The constant sum(beta) of the Lagrangian is left out as it does not depend on y.
"""

from dataclasses import dataclass
from functools import cached_property
import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from .projection import (
    FeasiblePoint,
    project_capped_simplex,
    uniform_point,
    check_list_size,
)

NORM_KINK = 1e-12


@dataclass(frozen=True)
class SubproblemInstance:
    """matrices and normalized_prefs hold only the dimensions included in the
    objective, gamma and beta are aligned with them."""

    matrices: list[sparse.csc_array]
    normalized_prefs: list[NDArray]
    gamma: NDArray
    beta: NDArray
    k: int
    m: int

    def __post_init__(self):
        check_list_size(self.k, self.m)
        H = len(self.matrices)
        if len(self.normalized_prefs) != H or self.gamma.shape != (H,) or self.beta.shape != (H,):
            raise ValueError("matrices, preferences, gamma and beta must align")
        if np.any(self.gamma <= 0):
            raise ValueError("gamma must be positive")
        if np.any(self.beta < 0):
            raise ValueError("beta must be non negative")
        for matrix, pref in zip(self.matrices, self.normalized_prefs):
            if matrix.shape != (pref.size, self.m):
                raise ValueError("candidate profile matrix shape mismatch")

    @cached_property
    def linear_terms(self) -> list[NDArray]:
        """C_h^T dbar_h for every dimension"""
        return [matrix.T @ pref for matrix, pref in zip(self.matrices, self.normalized_prefs)]

    @cached_property
    def linear_coefficients(self) -> NDArray:
        return sum(g * term for g, term in zip(self.gamma, self.linear_terms))


@dataclass(frozen=True)
class SubproblemResult:
    y: FeasiblePoint
    objective: float
    residual: float
    steps: int
    converged: bool


def subproblem_objective(inst: SubproblemInstance, y: NDArray) -> float:
    y = _check_shape(inst, y)
    total = 0.0
    for matrix, pref, gamma, beta in zip(
        inst.matrices, inst.normalized_prefs, inst.gamma, inst.beta
    ):
        r = matrix @ y
        total += gamma * (pref @ r - beta * np.linalg.norm(r))
    return float(total)


def subproblem_gradient(inst: SubproblemInstance, y: NDArray) -> NDArray:
    """Supergradient of the objective, taking zero for the norm term at r = 0"""
    y = _check_shape(inst, y)
    gradient = inst.linear_coefficients.copy()
    for matrix, gamma, beta in zip(inst.matrices, inst.gamma, inst.beta):
        r = matrix @ y
        norm = np.linalg.norm(r)
        if norm >= NORM_KINK and beta > 0:
            gradient -= gamma * beta * (matrix.T @ r) / norm
    return gradient


def projected_gradient_residual(inst: SubproblemInstance, y: NDArray) -> float:
    """Infinity norm of y - P(y + g(y)), zero exactly at a maximizer"""
    step = project_capped_simplex(y + subproblem_gradient(inst, y), inst.k)
    return float(np.max(np.abs(y - step)))


def solve_subproblem(
    inst: SubproblemInstance,
    y_init: FeasiblePoint | None = None,
    tol: float = 1e-8,
    max_steps: int = 5000,
    armijo: float = 1e-4,
) -> SubproblemResult:
    """Projected gradient ascent from y_init (or the uniform point k/m).

    Each step tries unit step length and halves it until the Armijo condition
    f(y_new) >= f(y) + armijo * g^T (y_new - y) holds. Stops when the projected
    gradient residual is below tol. If the step cap is reached the best iterate is
    returned with converged False.
    """
    if y_init is None:
        y = uniform_point(inst.m, inst.k)
    else:
        y = project_capped_simplex(np.asarray(y_init, dtype=float), inst.k)
    value = subproblem_objective(inst, y)

    residual = np.inf
    for steps in range(max_steps + 1):
        gradient = subproblem_gradient(inst, y)
        trial = project_capped_simplex(y + gradient, inst.k)
        residual = float(np.max(np.abs(y - trial)))
        if residual <= tol or steps == max_steps:
            break

        step_length = 1.0
        while True:
            trial_value = subproblem_objective(inst, trial)
            ascent = gradient @ (trial - y)
            if trial_value >= value + armijo * ascent and trial_value >= value:
                break
            step_length /= 2
            if step_length < 1e-16:
                # No ascent possible at machine precision
                return SubproblemResult(y, value, residual, steps, residual <= tol)
            trial = project_capped_simplex(y + step_length * gradient, inst.k)
        y, value = trial, trial_value

    return SubproblemResult(y, value, residual, steps, residual <= tol)


def _check_shape(inst: SubproblemInstance, y: NDArray) -> NDArray:
    y = np.asarray(y, dtype=float)
    if y.shape != (inst.m,):
        raise ValueError(f"decision of shape {y.shape} does not match m={inst.m}")
    return y
