"""Parameters for the iterative solver and its convex subproblem"""

from dataclasses import dataclass
from serde import serde, coerce


@serde(type_check=coerce)
@dataclass(frozen=True)
class RandomInit:
    """Draw every gamma and beta uniformly from (0, 1] using the solver seed"""


@serde(type_check=coerce)
@dataclass(frozen=True)
class FixedInit:
    """Start every dimension from the same gamma and beta"""

    gamma: float = 1.0
    beta: float = 0.5

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("initial gamma must be positive")
        if self.beta < 0:
            raise ValueError("initial beta must be non negative")


InitMode = RandomInit | FixedInit


@serde(type_check=coerce)
@dataclass(frozen=True)
class SolverConfig:
    """Convergence settings for the outer parameter iteration and the projected
    gradient subproblem solver.

    epsilon is the threshold on the norm of the error vector. subproblem_tol is the
    infinity norm bound on the projected gradient residual of the subproblem and should
    be several orders of magnitude below epsilon.
    """

    epsilon: float = 1e-3
    max_outer_iterations: int = 100
    subproblem_tol: float = 1e-8
    subproblem_max_steps: int = 5000
    armijo: float = 1e-4
    init_seed: int = 0
    init_mode: InitMode = RandomInit()

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_outer_iterations < 1:
            raise ValueError("max_outer_iterations must be at least 1")
        if self.subproblem_tol <= 0:
            raise ValueError("subproblem_tol must be positive")
