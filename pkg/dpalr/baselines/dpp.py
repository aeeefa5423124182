"""Determinantal point process recommendation by greedy MAP inference.

The kernel is L = Diag(q) S Diag(q) with S the profile similarity (one minus
dissimilarity) and quality q_i = exp(alpha * (1 - theta) / theta * likelihood_i).
theta = 0 is pure likelihood ranking and theta = 1 gives equal quality. The greedy
search adds, at every step, the item with the largest gain in log det L_Y, updating a
Cholesky factor of the selected kernel incrementally.
"""

import math
import numpy as np
from numpy.typing import NDArray

from ..model import CandidateSet, ProfileStore
from .dissimilarity import PairwiseDissimilarity, pairwise_dissimilarity
from .likelihood import normalize_likelihoods, top_k_by_likelihood

QUALITY_EXPONENT = 2.0
RIDGE = 1e-9
PSD_TOLERANCE = 1e-8


def build_kernel(likelihoods: NDArray, similarity: NDArray, theta: float) -> NDArray:
    """Quality weighted similarity kernel ridged to be positive definite

    theta = 0 has no kernel, dpp_select ranks by likelihood instead.

    :raises ValueError: unless 0 < theta <= 1, or if the ridged kernel has an
        eigenvalue below -1e-8
    """
    if not 0 < theta <= 1:
        raise ValueError(f"kernel needs 0 < theta <= 1, got {theta}")
    similarity = np.array(similarity, dtype=float)
    np.fill_diagonal(similarity, 1.0)
    if theta == 1:
        quality = np.ones_like(likelihoods)
    else:
        ratio = (1 - theta) / theta
        # Rescaling every quality by the same factor leaves the greedy choices
        # unchanged and keeps the exponent from overflowing
        quality = np.exp(QUALITY_EXPONENT * ratio * (likelihoods - likelihoods.max()))
    kernel = quality[:, None] * similarity * quality[None, :]
    kernel += RIDGE * np.eye(kernel.shape[0])
    min_eigenvalue = np.linalg.eigvalsh(kernel).min()
    if min_eigenvalue < -PSD_TOLERANCE:
        raise ValueError(
            f"kernel is not positive semi definite, minimum eigenvalue {min_eigenvalue}"
        )
    return kernel


def greedy_map(kernel: NDArray, k: int) -> tuple[list[int], list[float]]:
    """Greedy MAP inference with incremental Cholesky updates.

    di2s[i] is the Schur complement of item i given the selection, i.e. the factor
    by which det L_Y grows when i is added, so its log is the log det gain.
    Returns the selection and the log det gain of each step.
    """
    item_size = kernel.shape[0]
    if not 0 < k <= item_size:
        raise ValueError(f"cannot select {k} of {item_size} items")
    cis = np.zeros((k, item_size))
    di2s = np.copy(np.diag(kernel))
    selected: list[int] = []
    gains: list[float] = []
    available = np.ones(item_size, dtype=bool)
    while len(selected) < k:
        candidates_di2s = np.where(available, di2s, -np.inf)
        item = int(np.argmax(candidates_di2s))
        gains.append(math.log(max(di2s[item], np.finfo(float).tiny)))
        selected.append(item)
        available[item] = False
        if len(selected) == k:
            break
        j = len(selected) - 1
        ci_optimal = cis[:j, item]
        di_optimal = math.sqrt(max(di2s[item], np.finfo(float).tiny))
        elements = kernel[item, :]
        eis = (elements - ci_optimal @ cis[:j, :]) / di_optimal
        cis[j, :] = eis
        di2s = di2s - np.square(eis)
    return selected, gains


def dpp_select(
    candidates: CandidateSet,
    profiles: ProfileStore,
    theta: float,
    k: int,
    dissimilarity: PairwiseDissimilarity | None = None,
) -> list[int]:
    if theta == 0:
        return top_k_by_likelihood(candidates.likelihood_array, k)
    if dissimilarity is None:
        dissimilarity = pairwise_dissimilarity(profiles, candidates.candidates)
    likelihoods = normalize_likelihoods(candidates.likelihood_array)
    kernel = build_kernel(likelihoods, dissimilarity.similarity, theta)
    return greedy_map(kernel, k)[0]
