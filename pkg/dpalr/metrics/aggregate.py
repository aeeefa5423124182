"""Average per user metric values for each method and compare every method with a
reference method using a two sided paired t-test over the users both were scored on.
"""

from dataclasses import dataclass
import numpy as np
from scipy import stats

METRIC_NAMES = ["DPMS", "precision", "recall", "F1", "DCG"]
# differences spread less than this are treated as constant
DEGENERATE_SPREAD = 1e-12

MetricValues = dict[str, float | None]


class MismatchedUsersError(ValueError):
    """Raised when two methods are compared over different sets of users"""


@dataclass(frozen=True)
class PairedTest:
    mean_difference: float | None
    t_statistic: float | None
    p_value: float | None
    n_pairs: int
    degenerate: bool = False


def mean_value(values: list[float | None]) -> float | None:
    """Arithmetic mean ignoring values which are not applicable"""
    applicable = [value for value in values if value is not None]
    if not applicable:
        return None
    return float(np.mean(applicable))


def paired_test(ours: MetricValues, theirs: MetricValues) -> PairedTest:
    """Paired t-test of ours - theirs keyed by user.

    Users where either value is not applicable are dropped pairwise. When every
    difference is the same the test statistic is reported as 0 (all differences
    zero) or infinite and the result is flagged as degenerate.

    :raises MismatchedUsersError: if the two methods were scored on different users
    """
    if set(ours) != set(theirs):
        raise MismatchedUsersError(
            f"{len(set(ours) ^ set(theirs))} users are scored by only one method"
        )
    users = sorted(
        user for user in ours if ours[user] is not None and theirs[user] is not None
    )
    differences = np.array([ours[user] - theirs[user] for user in users])
    n = differences.size
    if n == 0:
        return PairedTest(None, None, None, 0)
    mean_difference = float(differences.mean())
    if n < 2:
        return PairedTest(mean_difference, None, None, n)

    if np.ptp(differences) <= DEGENERATE_SPREAD:
        if abs(mean_difference) <= DEGENERATE_SPREAD:
            return PairedTest(0.0, 0.0, 1.0, n, degenerate=True)
        return PairedTest(
            mean_difference,
            float(np.copysign(np.inf, mean_difference)),
            0.0,
            n,
            degenerate=True,
        )

    result = stats.ttest_rel(
        [ours[user] for user in users], [theirs[user] for user in users]
    )
    return PairedTest(mean_difference, float(result.statistic), float(result.pvalue), n)


def improvement_percent(ours: float | None, theirs: float | None) -> float | None:
    """Percentage improvement (ours - theirs) / theirs, None when theirs is zero"""
    if ours is None or theirs is None or theirs == 0:
        return None
    return (ours - theirs) / theirs * 100


@dataclass(frozen=True)
class MethodComparison:
    """How the reference method fares against one other method on one metric"""

    metric: str
    improvement: float | None
    test: PairedTest


@dataclass(frozen=True)
class MethodSummary:
    label: str
    n_users: int
    means: MetricValues
    comparisons: list[MethodComparison]

    def comparison(self, metric: str) -> MethodComparison:
        for comparison in self.comparisons:
            if comparison.metric == metric:
                return comparison
        raise KeyError(metric)


def aggregate(
    scores: dict[str, dict[str, MetricValues]], reference: str
) -> list[MethodSummary]:
    """Summaries for every method in scores (method label -> user -> metric values),
    each compared against the reference method.

    :raises MismatchedUsersError: if the methods were not scored on the same users
    :raises KeyError: if the reference method has no scores
    """
    if reference not in scores:
        raise KeyError(f"reference method {reference} has no scores")
    reference_scores = scores[reference]

    summaries = []
    for label, user_scores in scores.items():
        comparisons = []
        means = {}
        for metric in METRIC_NAMES:
            ours = {user: values.get(metric) for user, values in reference_scores.items()}
            theirs = {user: values.get(metric) for user, values in user_scores.items()}
            means[metric] = mean_value(list(theirs.values()))
            comparisons.append(
                MethodComparison(
                    metric,
                    improvement_percent(mean_value(list(ours.values())), means[metric]),
                    paired_test(ours, theirs),
                )
            )
        summaries.append(MethodSummary(label, len(user_scores), means, comparisons))
    return summaries
