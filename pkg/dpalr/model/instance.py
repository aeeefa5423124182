from dataclasses import dataclass
from functools import cached_property
from numpy.typing import NDArray

from ..params import FriendScope, AllFriends
from .graph import SocialGraph
from .profiles import ProfileStore
from .candidates import CandidateSet
from .preference import DiversityPreference, compute_diversity_preferences
from .matrices import CandidateProfileMatrix, build_candidate_profile_matrix


@dataclass(frozen=True)
class UserInstance:
    """Everything the recommendation methods need for one user: the candidate set,
    the user's preference in every profile dimension and the candidate profile
    matrices of every dimension."""

    candidates: CandidateSet
    preferences: list[DiversityPreference]
    matrices: list[CandidateProfileMatrix]
    dimension_names: tuple[str, ...]

    @property
    def user(self) -> str:
        return self.candidates.user

    @property
    def m(self) -> int:
        return self.candidates.m

    @property
    def likelihoods(self) -> NDArray:
        return self.candidates.likelihood_array

    @cached_property
    def included_dimensions(self) -> list[int]:
        """Dimensions with a nonzero preference"""
        return [pref.dimension for pref in self.preferences if not pref.is_zero]

    @cached_property
    def excluded_dimensions(self) -> list[int]:
        return [pref.dimension for pref in self.preferences if pref.is_zero]

    @property
    def h_effective(self) -> int:
        return len(self.included_dimensions)

    def truncate(self, candidate_size: int | None) -> "UserInstance":
        """Instance restricted to the most likely candidates"""
        truncated = self.candidates.truncate(candidate_size)
        if truncated is self.candidates:
            return self
        return UserInstance(
            truncated,
            self.preferences,
            [
                _select_columns(matrix, self.candidates, truncated)
                for matrix in self.matrices
            ],
            self.dimension_names,
        )


def _select_columns(
    matrix: CandidateProfileMatrix, full: CandidateSet, kept: CandidateSet
) -> CandidateProfileMatrix:
    position = {candidate: q for q, candidate in enumerate(kept.candidates)}
    rows, cols = [], []
    for z, q in zip(matrix.rows, matrix.cols):
        candidate = full.candidates[q]
        if candidate in position:
            rows.append(z)
            cols.append(position[candidate])
    return CandidateProfileMatrix(
        matrix.dimension, (matrix.shape[0], kept.m), tuple(rows), tuple(cols)
    )


def get_user_instance(
    graph: SocialGraph,
    profiles: ProfileStore,
    candidates: CandidateSet,
    friend_scope: FriendScope = AllFriends(),
) -> UserInstance:
    preferences = compute_diversity_preferences(
        graph, profiles, candidates.user, friend_scope
    )
    matrices = [
        build_candidate_profile_matrix(candidates, profiles, h)
        for h in range(profiles.H)
    ]
    return UserInstance(candidates, preferences, matrices, profiles.dimensions)
