import numpy as np
from numpy.typing import NDArray


def normalize_likelihoods(likelihoods: NDArray) -> NDArray:
    """Min-max scale a candidate set's likelihoods to [0, 1]; a set of equal
    likelihoods maps to all ones."""
    likelihoods = np.asarray(likelihoods, dtype=float)
    if likelihoods.size == 0:
        return likelihoods
    low, high = likelihoods.min(), likelihoods.max()
    if high == low:
        return np.ones_like(likelihoods)
    return (likelihoods - low) / (high - low)


def top_k_by_likelihood(likelihoods: NDArray, k: int) -> list[int]:
    """Positions of the k most likely candidates, ties by position"""
    likelihoods = np.asarray(likelihoods, dtype=float)
    _check_k(k, likelihoods.size)
    order = np.lexsort((np.arange(likelihoods.size), -likelihoods))
    return [int(q) for q in order[:k]]


def greedy_select(
    likelihoods: NDArray, k: int, marginal_score
) -> tuple[list[int], list[float]]:
    """Repeatedly add the remaining candidate with the highest marginal score,
    breaking ties by higher likelihood then lower position.

    marginal_score(candidate, selected) gives the score of adding candidate to the
    current selection. Returns the selection in pick order and the winning scores.
    """
    _check_k(k, len(likelihoods))
    selected: list[int] = []
    scores: list[float] = []
    remaining = list(range(len(likelihoods)))
    while len(selected) < k:
        best = max(
            remaining,
            key=lambda q: (marginal_score(q, selected), likelihoods[q], -q),
        )
        scores.append(marginal_score(best, selected))
        selected.append(best)
        remaining.remove(best)
    return selected, scores


def _check_k(k: int, m: int):
    if not 0 < k <= m:
        raise ValueError(f"cannot select {k} of {m} candidates")
