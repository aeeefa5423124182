"""Dispatch a method configuration to the function producing its recommendation so
that every method runs on the same user instance."""

from dataclasses import dataclass
from typing import Callable

from .params import (
    SolverConfig,
    MethodConfig,
    TopKConfig,
    DPALRConfig,
    MMRConfig,
    MSDConfig,
    DPPConfig,
    DiRecConfig,
    DPAMMRConfig,
)
from .model import ProfileStore, UserInstance
from .solver import Recommendation, solve_user, get_instance_context
from .baselines import (
    PairwiseDissimilarity,
    pairwise_dissimilarity,
    top_k_by_likelihood,
    mmr_select,
    msd_select,
    dpp_select,
    direc_select,
    context_dpa_mmr_select,
)


@dataclass(frozen=True)
class MethodResult:
    """Selected candidate positions in recommendation order, with the solver output
    for DPA-LR"""

    selected: list[int]
    recommendation: Recommendation | None = None


Selector = Callable[
    [UserInstance, ProfileStore, PairwiseDissimilarity | None], MethodResult
]


def get_selector(
    config: MethodConfig, solver_config: SolverConfig = SolverConfig()
) -> Selector:
    def dissimilarity_for(instance, profiles, dissimilarity):
        if dissimilarity is None:
            return pairwise_dissimilarity(profiles, instance.candidates.candidates)
        return dissimilarity

    def selector(
        instance: UserInstance,
        profiles: ProfileStore,
        dissimilarity: PairwiseDissimilarity | None = None,
    ) -> MethodResult:
        candidates = instance.candidates
        match config:
            case TopKConfig():
                return MethodResult(top_k_by_likelihood(instance.likelihoods, config.k))
            case DPALRConfig():
                recommendation = solve_user(instance, config.k, solver_config)
                return MethodResult(recommendation.selected_indices, recommendation)
            case MMRConfig() | MSDConfig() | DPPConfig():
                select = {MMRConfig: mmr_select, MSDConfig: msd_select, DPPConfig: dpp_select}[
                    type(config)
                ]
                dis = dissimilarity_for(instance, profiles, dissimilarity)
                return MethodResult(
                    select(candidates, profiles, config.theta, config.k, dissimilarity=dis)
                )
            case DiRecConfig():
                dis = dissimilarity_for(instance, profiles, dissimilarity)
                return MethodResult(
                    direc_select(candidates, profiles, config.k, dissimilarity=dis)
                )
            case DPAMMRConfig():
                selected, _ = context_dpa_mmr_select(
                    get_instance_context(instance), candidates, config.sigma, config.k
                )
                return MethodResult(selected)
            case _:
                raise NotImplementedError

    return selector
