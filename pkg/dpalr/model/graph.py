"""Undirected friendship graph of one time period with the history of when every
friendship first appeared."""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable
import networkx as nx

from ..params import FriendScope, AllFriends, RecentFriends

Edge = tuple[str, str]


class UnknownUserError(KeyError):
    """Raised when a user id is not part of the social graph"""


def canonical_edge(a: str, b: str) -> Edge:
    """Order the end points so that (a, b) and (b, a) are the same edge"""
    if a == b:
        raise ValueError(f"self loop on user {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class SocialGraph:
    """Friendship graph of the current snapshot.

    edge_periods maps every edge to the index of the first snapshot it appears in,
    with period the index of the current snapshot. A graph built from a single edge
    list has every edge in period 0.
    """

    users: frozenset[str]
    edges: frozenset[Edge]
    snapshot_label: str = "0"
    period: int = 0
    edge_periods: dict[Edge, int] | None = None

    def __post_init__(self):
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self loop on user {a}")
            if (a, b) != canonical_edge(a, b):
                raise ValueError(f"edge ({a}, {b}) is not in canonical order")
            if a not in self.users or b not in self.users:
                raise UnknownUserError(f"edge ({a}, {b}) references an unknown user")

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[str, str]], users: Iterable[str] = (), label="0"
    ) -> "SocialGraph":
        canonical = frozenset(canonical_edge(a, b) for a, b in edges)
        all_users = frozenset(users) | {u for edge in canonical for u in edge}
        return cls(all_users, canonical, snapshot_label=label)

    @classmethod
    def from_snapshots(
        cls,
        snapshots: list[Iterable[tuple[str, str]]],
        labels: list[str] | None = None,
        users: Iterable[str] = (),
    ) -> "SocialGraph":
        """Current graph is the union of all snapshots, the last being the current
        period. An edge belongs to the period of the first snapshot listing it."""
        if not snapshots:
            raise ValueError("need at least one snapshot of edges")
        if labels is None:
            labels = [str(i) for i in range(len(snapshots))]
        edge_periods: dict[Edge, int] = {}
        for period, snapshot in enumerate(snapshots):
            for a, b in snapshot:
                edge_periods.setdefault(canonical_edge(a, b), period)
        all_users = frozenset(users) | {u for edge in edge_periods for u in edge}
        return cls(
            all_users,
            frozenset(edge_periods),
            snapshot_label=labels[-1],
            period=len(snapshots) - 1,
            edge_periods=edge_periods,
        )

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.users))
        graph.add_edges_from(sorted(self.edges))
        return nx.freeze(graph)

    def has_edge(self, a: str, b: str) -> bool:
        return self.nx_graph.has_edge(a, b)

    def friends(self, user: str, scope: FriendScope = AllFriends()) -> list[str]:
        """Sorted friends of the user within the friend scope"""
        if user not in self.users:
            raise UnknownUserError(user)
        neighbours = sorted(self.nx_graph.neighbors(user))
        match scope:
            case AllFriends():
                return neighbours
            case RecentFriends(window=window):
                first_recent_period = self.period - window + 1
                return [
                    friend
                    for friend in neighbours
                    if self.first_period(canonical_edge(user, friend))
                    >= first_recent_period
                ]
            case _:
                raise NotImplementedError

    def first_period(self, edge: Edge) -> int:
        """Index of the first snapshot containing the edge"""
        if self.edge_periods is None:
            return self.period
        return self.edge_periods[edge]

    def two_hop_users(self, user: str) -> set[str]:
        """Users reachable in exactly two steps who are not already friends"""
        if user not in self.users:
            raise UnknownUserError(user)
        lengths = nx.single_source_shortest_path_length(self.nx_graph, user, cutoff=2)
        return {other for other, length in lengths.items() if length == 2}

    def shared_friend_count(self, a: str, b: str) -> int:
        return len(list(nx.common_neighbors(self.nx_graph, a, b)))

    def summary(self) -> dict[str, int]:
        return {"users": len(self.users), "edges": len(self.edges)}
