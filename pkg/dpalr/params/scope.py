from dataclasses import dataclass
from serde import serde, coerce


@serde(type_check=coerce)
@dataclass(frozen=True)
class AllFriends:
    """Measure diversity preference over every friend in the current snapshot"""


@serde(type_check=coerce)
@dataclass(frozen=True)
class RecentFriends:
    """Measure diversity preference only over friends acquired in the last window
    snapshots (window=1 keeps friends added in the current snapshot only)."""

    window: int = 1

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("recent friends window must be at least one snapshot")


FriendScope = AllFriends | RecentFriends
