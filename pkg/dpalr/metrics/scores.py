"""Per recommendation evaluation metrics"""

from dataclasses import dataclass
import numpy as np

from ..model import DiversityPreference, CandidateProfileMatrix
from ..solver import get_context, context_objective, DPAContext


@dataclass(frozen=True)
class EvaluationRecord:
    """A recommendation list against the friends the user actually added in the
    test period"""

    user: str
    recommended: list[str]
    actually_added: frozenset[str]

    def __post_init__(self):
        if len(set(self.recommended)) != len(self.recommended):
            raise ValueError(f"{self.user}: recommended friends must be distinct")

    @property
    def k(self) -> int:
        return len(self.recommended)

    @property
    def true_positives(self) -> int:
        return len(set(self.recommended) & self.actually_added)

    @property
    def P(self) -> int:
        return len(self.actually_added)


@dataclass(frozen=True)
class AccuracyScores:
    """recall and f1 are None when the user added no friends"""

    precision: float
    recall: float | None
    f1: float | None


def dpms(
    prefs: list[DiversityPreference],
    matrices: list[CandidateProfileMatrix],
    recommended: list[int],
) -> float:
    """Mean cosine between preference and recommended diversity over the dimensions
    with a nonzero preference.

    :raises NoIncludedDimensionsError: if every preference is zero
    """
    return context_dpms(get_context(prefs, matrices), recommended)


def context_dpms(context: DPAContext, recommended: list[int]) -> float:
    if not recommended:
        raise ValueError("cannot score an empty recommendation")
    decision = np.zeros(context.m)
    decision[recommended] = 1.0
    return context_objective(context, decision) / context.h_effective


def precision_recall_f1(record: EvaluationRecord) -> AccuracyScores:
    if record.k == 0:
        raise ValueError(f"{record.user}: empty recommendation")
    tp = record.true_positives
    precision = tp / record.k
    if record.P == 0:
        return AccuracyScores(precision, None, None)
    recall = tp / record.P
    if precision + recall == 0:
        return AccuracyScores(precision, recall, 0.0)
    return AccuracyScores(precision, recall, 2 * precision * recall / (precision + recall))


def dcg(record: EvaluationRecord) -> float:
    """Binary relevance discounted cumulative gain, rank j counted from 1"""
    return float(
        sum(
            1 / np.log2(j + 1)
            for j, friend in enumerate(record.recommended, start=1)
            if friend in record.actually_added
        )
    )
