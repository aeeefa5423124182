"""Exhaustive search over every k subset of the candidates for the exact optimum of
the diversity preference matching objective, and the gap between an approximate
recommendation and that optimum.

Subsets are enumerated in lexicographic order and scored in vectorised chunks using
dense candidate profile matrices restricted to the values some candidate holds.
"""

from dataclasses import dataclass
from itertools import combinations, islice, chain
from math import comb
import numpy as np

from .model import DiversityPreference, CandidateProfileMatrix
from .solver import Recommendation, get_context, DPAContext

DEFAULT_BUDGET = 5_000_000
TIE_TOLERANCE = 1e-12
# upper bound on the number of floats held per scoring chunk
CHUNK_FLOATS = 4_000_000


class OracleBudgetError(ValueError):
    """Raised when there are more subsets than the enumeration budget allows"""


@dataclass(frozen=True)
class OracleResult:
    optimal_selection: tuple[int, ...]
    optimal_objective: float
    subsets_evaluated: int


def exhaustive_optimal(
    prefs: list[DiversityPreference],
    matrices: list[CandidateProfileMatrix],
    k: int,
    budget: int = DEFAULT_BUDGET,
) -> OracleResult:
    """Best k subset under the objective. Among subsets within 1e-12 of the best
    objective the lexicographically smallest index tuple is returned.

    :raises OracleBudgetError: if C(m, k) exceeds the budget
    :raises NoIncludedDimensionsError: if every preference is zero
    """
    context = get_context(prefs, matrices)
    return context_optimal(context, k, budget)


def context_optimal(context: DPAContext, k: int, budget: int = DEFAULT_BUDGET) -> OracleResult:
    m = context.m
    if not 0 < k <= m:
        raise ValueError(f"cannot select {k} of {m} candidates")
    n_subsets = comb(m, k)
    if n_subsets > budget:
        raise OracleBudgetError(
            f"C({m}, {k}) = {n_subsets} subsets exceeds the budget of {budget}"
        )

    widest = max(matrix.shape[0] for matrix in context.compact_matrices)
    chunk_size = max(1000, CHUNK_FLOATS // (k * max(widest, 1)))
    subsets = combinations(range(m), k)
    best_value = -np.inf
    best_subset: tuple[int, ...] = ()
    evaluated = 0
    while True:
        chunk = np.fromiter(
            chain.from_iterable(islice(subsets, chunk_size)), dtype=np.intp
        ).reshape(-1, k)
        if chunk.shape[0] == 0:
            break
        values = _score_subsets(context, chunk)
        evaluated += chunk.shape[0]
        chunk_max = values.max()
        if chunk_max > best_value + TIE_TOLERANCE:
            first = int(np.argmax(values >= chunk_max - TIE_TOLERANCE))
            best_value = float(values[first])
            best_subset = tuple(int(q) for q in chunk[first])
    return OracleResult(best_subset, best_value, evaluated)


def _score_subsets(context: DPAContext, subsets: np.ndarray) -> np.ndarray:
    """Objective of every row of subsets (shape (n, k)) at once"""
    values = np.zeros(subsets.shape[0])
    for matrix, pref in zip(context.compact_matrices, context.compact_prefs):
        # r for every subset, shape (n, values held by candidates)
        r = matrix.T[subsets].sum(axis=1)
        norms = np.linalg.norm(r, axis=1)
        alignments = r @ pref
        safe = np.where(norms > 0, norms, 1.0)
        values += np.where(norms > 0, alignments / safe, 0.0)
    return values


def objective_difference(approx: Recommendation, oracle: OracleResult) -> float | None:
    """(optimal - approximate) / optimal in percent, None if the optimum is zero"""
    if oracle.optimal_objective == 0:
        return None
    return (
        (oracle.optimal_objective - approx.objective_value)
        / oracle.optimal_objective
        * 100
    )


def recommendation_overlap(approx: Recommendation, oracle: OracleResult) -> int:
    """Number of candidates both selections recommend"""
    return len(set(approx.selected_indices) & set(oracle.optimal_selection))


