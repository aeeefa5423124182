"""Iterative algorithm for the diversity preference-aware link recommendation problem.

The relaxed problem maximizes a sum of ratios over the capped simplex. Introducing
beta_h for each cosine and a multiplier gamma_h for the constraint defining it turns
it into a family of concave subproblems parameterized by (gamma, beta). Starting from
random parameters the algorithm alternates

    solve the subproblem for (gamma, beta)      -> y
    errors delta_h = beta_h ||C_h y|| - dbar_h^T C_h y
           delta_{H+h} = gamma_h ||C_h y|| - 1
    beta_h = dbar_h^T C_h y / ||C_h y||,  gamma_h = 1 / ||C_h y||

until the error norm drops below epsilon, at which point y is a stationary point of
the relaxed problem. The relaxed solution is rounded by keeping its k largest entries.
"""

from dataclasses import dataclass, field
import numpy as np
from numpy.typing import NDArray

from ..params import SolverConfig, RandomInit, FixedInit
from ..model import (
    DiversityPreference,
    CandidateSet,
    ProfileStore,
    UserInstance,
    build_candidate_profile_matrix,
)
from ..subproblem import (
    FeasiblePoint,
    SubproblemInstance,
    solve_subproblem,
    uniform_point,
)
from .objective import (
    DPAContext,
    NORM_KINK,
    get_context,
    context_objective,
)
from .rounding import round_top_k, to_decision


@dataclass(frozen=True)
class IterationRecord:
    l: int
    gamma: NDArray
    beta: NDArray
    y: NDArray
    delta: NDArray
    error_norm: float
    subproblem_steps: int
    subproblem_converged: bool
    degenerate: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class SolveTrace:
    iterations: list[IterationRecord]
    converged: bool
    excluded_dimensions: list[int]
    h_effective: int
    best_iteration: int
    empty_dimensions: list[int] = field(default_factory=list)

    @property
    def iteration_count(self) -> int:
        return len(self.iterations)

    @property
    def final_error_norm(self) -> float:
        if not self.iterations:
            return 0.0
        return self.iterations[-1].error_norm

    @property
    def subproblem_failures(self) -> int:
        return sum(not record.subproblem_converged for record in self.iterations)


@dataclass(frozen=True)
class Recommendation:
    user: str
    selected: list[str]
    selected_indices: list[int]
    relaxed_solution: NDArray
    objective_value: float
    trace: SolveTrace


@dataclass(frozen=True)
class ParameterUpdate:
    gamma: NDArray
    beta: NDArray
    degenerate: list[int]


def compute_errors(
    y: FeasiblePoint, gamma: NDArray, beta: NDArray, context: DPAContext
) -> NDArray:
    """Error vector of length 2 H_effective, the first half measuring how far beta
    is from the cosines at y and the second how far gamma is from 1/||C y||."""
    norms, alignments = _norms_and_alignments(context, y)
    return np.concatenate((beta * norms - alignments, gamma * norms - 1))


def update_parameters(
    y: FeasiblePoint,
    context: DPAContext,
    previous_gamma: NDArray | None = None,
    previous_beta: NDArray | None = None,
) -> ParameterUpdate:
    """beta_h = dbar_h^T C_h y / ||C_h y|| and gamma_h = 1 / ||C_h y||.

    A dimension with ||C_h y|| below 1e-12 is degenerate and keeps its previous
    parameters.
    """
    norms, alignments = _norms_and_alignments(context, y)
    degenerate = [i for i, norm in enumerate(norms) if norm < NORM_KINK]
    if degenerate and (previous_gamma is None or previous_beta is None):
        raise ValueError("degenerate dimension and no previous parameters to keep")

    safe_norms = np.where(norms < NORM_KINK, 1.0, norms)
    gamma = 1 / safe_norms
    beta = alignments / safe_norms
    if degenerate:
        gamma[degenerate] = previous_gamma[degenerate]
        beta[degenerate] = previous_beta[degenerate]
    if np.any(beta < 0):
        raise ValueError(f"update produced a negative beta {beta}")
    return ParameterUpdate(gamma, beta, degenerate)


def initial_parameters(config: SolverConfig, H: int) -> tuple[NDArray, NDArray]:
    match config.init_mode:
        case RandomInit():
            rng = np.random.default_rng(config.init_seed)
            # 1 - U[0, 1) is uniform on (0, 1]
            gamma = 1.0 - rng.random(H)
            beta = 1.0 - rng.random(H)
            return gamma, beta
        case FixedInit(gamma=gamma, beta=beta):
            return np.full(H, gamma, dtype=float), np.full(H, beta, dtype=float)
        case _:
            raise NotImplementedError


def solve_relaxed(
    context: DPAContext, k: int, config: SolverConfig
) -> SolveTrace:
    """Run the parameter iteration and return the full trace. Included dimensions
    no candidate holds a value in are left out of the iteration.

    :raises ValueError: if every included dimension is empty
    """
    full, context = context, context.solvable()
    if context.h_effective == 0:
        raise ValueError("no candidate holds a value in any included dimension")
    gamma, beta = initial_parameters(config, context.h_effective)
    y = uniform_point(context.m, k)
    records: list[IterationRecord] = []
    degenerate: list[int] = []

    for l in range(1, config.max_outer_iterations + 1):
        if l > 1:
            update = update_parameters(y, context, gamma, beta)
            gamma, beta, degenerate = update.gamma, update.beta, update.degenerate

        result = solve_subproblem(
            SubproblemInstance(
                context.matrices, context.unit_prefs, gamma, beta, k, context.m
            ),
            y_init=y,
            tol=config.subproblem_tol,
            max_steps=config.subproblem_max_steps,
            armijo=config.armijo,
        )
        y = result.y
        delta = compute_errors(y, gamma, beta, context)
        error_norm = float(np.linalg.norm(delta))
        records.append(
            IterationRecord(
                l,
                gamma.copy(),
                beta.copy(),
                y.copy(),
                delta,
                error_norm,
                result.steps,
                result.converged,
                degenerate,
            )
        )
        if error_norm < config.epsilon:
            break

    converged = records[-1].error_norm < config.epsilon
    if converged:
        best = len(records) - 1
    else:
        best = int(np.argmin([record.error_norm for record in records]))
    return SolveTrace(
        records, converged, full.excluded, full.h_effective, best, full.empty_dimensions
    )


def solve_user(instance: UserInstance, k: int, config: SolverConfig) -> Recommendation:
    """Recommend k of the user's candidates

    :raises NoIncludedDimensionsError: if the user has no nonzero preference
    :raises ValueError: unless 0 < k <= m
    """
    context = get_context(instance.preferences, instance.matrices)
    return _recommend(instance.candidates, context, k, config)


def solve_dpa(
    prefs: list[DiversityPreference],
    candidates: CandidateSet,
    profiles: ProfileStore,
    k: int,
    config: SolverConfig = SolverConfig(),
) -> Recommendation:
    """Recommend k candidates matching the preferences as closely as possible."""
    matrices = [
        build_candidate_profile_matrix(candidates, profiles, pref.dimension)
        for pref in prefs
    ]
    context = get_context(prefs, matrices)
    return _recommend(candidates, context, k, config)


def _recommend(
    candidates: CandidateSet, context: DPAContext, k: int, config: SolverConfig
) -> Recommendation:
    m = candidates.m
    if not 0 < k <= m:
        raise ValueError(f"cannot recommend {k} of {m} candidates")

    if k == m or not context.solvable().h_effective:
        # every selection scores the same, nothing to optimize
        relaxed = np.ones(m) if k == m else uniform_point(m, k)
        trace = SolveTrace(
            [], True, context.excluded, context.h_effective, -1, context.empty_dimensions
        )
    else:
        trace = solve_relaxed(context, k, config)
        relaxed = trace.iterations[trace.best_iteration].y

    selected = round_top_k(relaxed, k, candidates.likelihood_array)
    return Recommendation(
        user=candidates.user,
        selected=[candidates.candidates[q] for q in selected],
        selected_indices=selected,
        relaxed_solution=relaxed,
        objective_value=context_objective(context, to_decision(selected, m)),
        trace=trace,
    )


def _norms_and_alignments(context: DPAContext, y: NDArray) -> tuple[NDArray, NDArray]:
    y = np.asarray(y, dtype=float)
    if y.shape != (context.m,):
        raise ValueError(f"decision of shape {y.shape} does not match m={context.m}")
    norms = np.empty(context.h_effective)
    alignments = np.empty(context.h_effective)
    for i, (matrix, pref) in enumerate(zip(context.matrices, context.unit_prefs)):
        r = matrix @ y
        norms[i] = np.linalg.norm(r)
        alignments[i] = pref @ r
    return norms, alignments
