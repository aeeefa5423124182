from .scores import (
    EvaluationRecord,
    AccuracyScores,
    dpms,
    context_dpms,
    precision_recall_f1,
    dcg,
)
from .aggregate import (
    METRIC_NAMES,
    MismatchedUsersError,
    PairedTest,
    MethodComparison,
    MethodSummary,
    mean_value,
    paired_test,
    improvement_percent,
    aggregate,
)
