"""Clustering based diversification: partition the candidates into k clusters by
greedy k-center on profile dissimilarity and recommend the most likely member of each
cluster."""

import numpy as np
from numpy.typing import NDArray

from ..model import CandidateSet, ProfileStore
from .dissimilarity import PairwiseDissimilarity, pairwise_dissimilarity
from .likelihood import top_k_by_likelihood


def k_center_clusters(dis: NDArray, likelihoods: NDArray, k: int) -> list[list[int]]:
    """Clusters in center order. The first center is the most likely candidate, each
    further center the non center farthest from its nearest center (ties by
    position). Points join their nearest center, ties to the earliest center, and
    every center belongs to its own cluster."""
    m = dis.shape[0]
    if not 0 < k <= m:
        raise ValueError(f"cannot form {k} clusters from {m} candidates")
    centers = [top_k_by_likelihood(likelihoods, 1)[0]]
    nearest = dis[centers[0]].copy()
    while len(centers) < k:
        distances = nearest.copy()
        distances[centers] = -np.inf
        center = int(np.argmax(distances))
        centers.append(center)
        nearest = np.minimum(nearest, dis[center])

    assignment = np.argmin(dis[centers], axis=0)
    assignment[centers] = np.arange(k)
    return [[q for q in range(m) if assignment[q] == c] for c in range(k)]


def direc_select(
    candidates: CandidateSet,
    profiles: ProfileStore,
    k: int,
    dissimilarity: PairwiseDissimilarity | None = None,
) -> list[int]:
    if dissimilarity is None:
        dissimilarity = pairwise_dissimilarity(profiles, candidates.candidates)
    likelihoods = candidates.likelihood_array
    clusters = k_center_clusters(dissimilarity.matrix, likelihoods, k)
    return [
        members[top_k_by_likelihood(likelihoods[members], 1)[0]]
        for members in clusters
    ]
