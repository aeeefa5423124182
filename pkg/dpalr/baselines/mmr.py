"""Maximal marginal relevance adapted to link recommendation.

The first pick is the most likely candidate. Every later pick maximizes

    (1 - theta) * likelihood + theta * mean dissimilarity to the selected candidates
"""

from ..model import CandidateSet, ProfileStore
from .dissimilarity import PairwiseDissimilarity, pairwise_dissimilarity
from .likelihood import normalize_likelihoods, greedy_select


def mmr_select(
    candidates: CandidateSet,
    profiles: ProfileStore,
    theta: float,
    k: int,
    dissimilarity: PairwiseDissimilarity | None = None,
) -> list[int]:
    return mmr_select_with_scores(candidates, profiles, theta, k, dissimilarity)[0]


def mmr_select_with_scores(
    candidates: CandidateSet,
    profiles: ProfileStore,
    theta: float,
    k: int,
    dissimilarity: PairwiseDissimilarity | None = None,
) -> tuple[list[int], list[float]]:
    if dissimilarity is None:
        dissimilarity = pairwise_dissimilarity(profiles, candidates.candidates)
    likelihoods = normalize_likelihoods(candidates.likelihood_array)
    dis = dissimilarity.matrix

    def marginal_score(q, selected):
        if not selected:
            return likelihoods[q]
        diversity = dis[q, selected].mean()
        return (1 - theta) * likelihoods[q] + theta * diversity

    return greedy_select(likelihoods, k, marginal_score)
