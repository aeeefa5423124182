"""Maximal marginal relevance with diversity preference matching as the diversity
term. Each pick maximizes

    (1 - sigma) * likelihood + sigma * gain in the preference matching objective

with the objective divided by the number of included dimensions so both terms lie in
[0, 1]."""

import numpy as np

from ..model import (
    CandidateSet,
    DiversityPreference,
    ProfileStore,
    build_candidate_profile_matrix,
)
from ..solver import DPAContext, get_context, context_objective
from .likelihood import normalize_likelihoods, greedy_select


def dpa_mmr_select(
    prefs: list[DiversityPreference],
    candidates: CandidateSet,
    profiles: ProfileStore,
    sigma: float,
    k: int,
) -> list[int]:
    matrices = [
        build_candidate_profile_matrix(candidates, profiles, pref.dimension)
        for pref in prefs
    ]
    return context_dpa_mmr_select(
        get_context(prefs, matrices), candidates, sigma, k
    )[0]


def context_dpa_mmr_select(
    context: DPAContext, candidates: CandidateSet, sigma: float, k: int
) -> tuple[list[int], list[float]]:
    likelihoods = normalize_likelihoods(candidates.likelihood_array)
    m = candidates.m
    cache: dict[tuple[int, ...], float] = {}

    def matching(selected: tuple[int, ...]) -> float:
        if selected not in cache:
            decision = np.zeros(m)
            decision[list(selected)] = 1.0
            cache[selected] = context_objective(context, decision) / context.h_effective
        return cache[selected]

    def marginal_score(q, selected):
        current = tuple(sorted(selected))
        gain = matching(tuple(sorted(selected + [q]))) - matching(current)
        return (1 - sigma) * likelihoods[q] + sigma * gain

    return greedy_select(likelihoods, k, marginal_score)
