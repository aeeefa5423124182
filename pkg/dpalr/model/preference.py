"""Diversity preference of a user: for every value of a profile dimension the number
of the user's friends holding that value."""

from dataclasses import dataclass
import numpy as np
from numpy.typing import NDArray

from ..params import FriendScope, AllFriends
from .graph import SocialGraph
from .profiles import ProfileStore


class ZeroPreferenceError(ValueError):
    """Raised when normalizing a preference no friend contributes to"""


@dataclass(frozen=True)
class DiversityPreference:
    user: str
    dimension: int
    counts: NDArray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.counts))

    @property
    def is_zero(self) -> bool:
        return not np.any(self.counts > 0)


def compute_diversity_preference(
    graph: SocialGraph,
    profiles: ProfileStore,
    user: str,
    dimension: int,
    friend_scope: FriendScope = AllFriends(),
) -> DiversityPreference:
    """Count friends holding each value. A friend holding several values of the
    dimension adds one to each of them and a friend with no value adds nothing.

    :raises UnknownUserError: if the user is not in the graph
    """
    counts = np.zeros(profiles.size(dimension), dtype=np.int64)
    for friend in graph.friends(user, friend_scope):
        for z in profiles.values(friend, dimension):
            counts[z] += 1
    return DiversityPreference(user, dimension, counts)


def compute_diversity_preferences(
    graph: SocialGraph,
    profiles: ProfileStore,
    user: str,
    friend_scope: FriendScope = AllFriends(),
) -> list[DiversityPreference]:
    """Preferences for every profile dimension in dimension order"""
    return [
        compute_diversity_preference(graph, profiles, user, h, friend_scope)
        for h in range(profiles.H)
    ]


def normalize_preference(pref: DiversityPreference) -> NDArray:
    """Unit Euclidean norm direction of the preference counts

    :raises ZeroPreferenceError: if no friend holds any value of the dimension, such
        dimensions must be excluded from the objective by the caller
    """
    if pref.is_zero:
        raise ZeroPreferenceError(
            f"user {pref.user} has a zero preference in dimension {pref.dimension}"
        )
    counts = pref.counts.astype(float)
    return counts / np.linalg.norm(counts)
