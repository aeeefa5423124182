__version__ = "1.0.0"

# Exported functions and classes
from .params import *
from .model import *
from .subproblem import *
from .solver import *
from .metrics import *
from .data import *
from .baselines import *
from .oracle import (
    OracleResult,
    OracleBudgetError,
    exhaustive_optimal,
    context_optimal,
    objective_difference,
    recommendation_overlap,
)
from .methods import MethodResult, get_selector
from .synth import SyntheticData, generate
from .run_experiments import (
    run_recommend,
    run_evaluate,
    run_oracle_gap,
    run_sweep,
    evaluate_records,
)
from .load import load_run, RunResults
