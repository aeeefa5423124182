from .objective import (
    DPAContext,
    NoIncludedDimensionsError,
    get_context,
    get_instance_context,
    dpa_objective,
    context_objective,
    cosine_terms,
)
from .rounding import round_top_k, to_decision
from .dpa import (
    IterationRecord,
    SolveTrace,
    Recommendation,
    ParameterUpdate,
    compute_errors,
    update_parameters,
    initial_parameters,
    solve_relaxed,
    solve_user,
    solve_dpa,
)
from .kkt import KKTResiduals, kkt_residuals, trace_residuals, construction_residuals
