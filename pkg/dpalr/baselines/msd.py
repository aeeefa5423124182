"""Max-sum diversification: greedily grow the selection maximizing

    (1 - theta) * sum of likelihoods + theta * sum of pairwise dissimilarities

so each step adds the candidate with the largest marginal gain
(1 - theta) * likelihood + theta * total dissimilarity to the selected candidates.
"""

from ..model import CandidateSet, ProfileStore
from .dissimilarity import PairwiseDissimilarity, pairwise_dissimilarity
from .likelihood import normalize_likelihoods, greedy_select


def msd_objective(likelihoods, dis, selected: list[int], theta: float) -> float:
    relevance = sum(likelihoods[q] for q in selected)
    diversity = sum(
        dis[a, b] for i, a in enumerate(selected) for b in selected[i + 1 :]
    )
    return float((1 - theta) * relevance + theta * diversity)


def msd_select(
    candidates: CandidateSet,
    profiles: ProfileStore,
    theta: float,
    k: int,
    dissimilarity: PairwiseDissimilarity | None = None,
) -> list[int]:
    return msd_select_with_scores(candidates, profiles, theta, k, dissimilarity)[0]


def msd_select_with_scores(
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

    def marginal_gain(q, selected):
        return (1 - theta) * likelihoods[q] + theta * dis[q, selected].sum()

    return greedy_select(likelihoods, k, marginal_gain)
