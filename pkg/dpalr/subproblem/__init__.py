from .projection import (
    FeasiblePoint,
    project_capped_simplex,
    is_feasible,
    uniform_point,
)
from .subproblem import (
    SubproblemInstance,
    SubproblemResult,
    subproblem_objective,
    subproblem_gradient,
    projected_gradient_residual,
    solve_subproblem,
)
