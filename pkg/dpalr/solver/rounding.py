import numpy as np
from numpy.typing import NDArray

TIE_DECIMALS = 9


def round_top_k(relaxed: NDArray, k: int, likelihoods: NDArray) -> list[int]:
    """Positions of the k largest relaxed entries in descending order.

    Entries equal to 9 decimal places are ordered by higher linkage likelihood and
    then by candidate position.
    """
    relaxed = np.asarray(relaxed, dtype=float)
    likelihoods = np.asarray(likelihoods, dtype=float)
    if relaxed.shape != likelihoods.shape:
        raise ValueError("need one likelihood per relaxed entry")
    if not 0 < k <= relaxed.size:
        raise ValueError(f"cannot select {k} of {relaxed.size} candidates")
    order = np.lexsort(
        (np.arange(relaxed.size), -likelihoods, -np.round(relaxed, TIE_DECIMALS))
    )
    return [int(q) for q in order[:k]]


def to_decision(selected: list[int], m: int) -> NDArray:
    decision = np.zeros(m)
    decision[selected] = 1.0
    return decision
