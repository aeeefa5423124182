from .dissimilarity import (
    PairwiseDissimilarity,
    jaccard_dissimilarity,
    profile_dissimilarity,
    pairwise_dissimilarity,
)
from .likelihood import normalize_likelihoods, top_k_by_likelihood, greedy_select
from .mmr import mmr_select, mmr_select_with_scores
from .msd import msd_select, msd_select_with_scores, msd_objective
from .dpp import dpp_select, build_kernel, greedy_map
from .direc import direc_select, k_center_clusters
from .dpa_mmr import dpa_mmr_select, context_dpa_mmr_select
