"""Deterministic synthetic social networks with planted diversity preference.

Every user holds a few values in each profile dimension and has a hidden taste, a
distribution over the values of each dimension drawn from a symmetric Dirichlet with
parameter 1 / preference_concentration. The share a user's taste puts on the values
another user holds, averaged over those values, measures how well the two match in a
dimension. Friends are chosen with weight exp(HOMOPHILY * a), where the affinity a
sums the shares of both users over every dimension. Both ends of every edge are then
drawn to each other's values, so the measured diversity preference of a user follows
their taste.

Snapshots 0 and 1 of the graph add friends_per_snapshot friends per user in turn.
Candidates are the m non-friends with the largest linkage likelihood, a noisy
increasing function of the number of shared friends in snapshot 1. In the test
period (snapshot 2) every candidate is accepted independently with the probability
given by the acceptance model.
"""

from dataclasses import dataclass
from pathlib import Path
import numpy as np
from numpy.typing import NDArray

from .printing import get_printer, SUMMARY
from .params import SynthSpec, RunManifest
from .model import SocialGraph, ProfileStore, CandidateSet, canonical_edge
from .data import Bundle, write_bundle

# pull on friend choice of each dimension in which a pair match fully
HOMOPHILY = 5.0
# shift so that users with no shared friends have a small likelihood
LIKELIHOOD_OFFSET = 2.0


@dataclass(frozen=True)
class SyntheticData:
    """snapshots holds the cumulative edge sets of snapshots 0, 1 and 2.
    tastes holds one (n_users, Z_h) array per dimension, rows in user order. match is
    the taste share of the row user on the column user averaged over dimensions."""

    spec: SynthSpec
    users: list[str]
    snapshots: list[frozenset[tuple[str, str]]]
    profiles: ProfileStore
    candidates: dict[str, CandidateSet]
    truth: dict[str, frozenset[str]]
    tastes: list[NDArray]
    match: NDArray

    def graph(self, period: int = 1) -> SocialGraph:
        """Graph of a snapshot with the period every edge first appeared"""
        new_edges = [self.snapshots[0]] + [
            self.snapshots[p] - self.snapshots[p - 1] for p in range(1, period + 1)
        ]
        return SocialGraph.from_snapshots(
            [sorted(edges) for edges in new_edges], users=self.users
        )

    def bundle(self) -> Bundle:
        """Input bundle as seen at the end of snapshot 1 with the test period
        additions as truth"""
        return Bundle(self.graph(1), self.profiles, self.candidates, self.truth)

    def save(self, directory: Path) -> RunManifest:
        """Write the bundle files, the spec and a manifest ready to run"""
        directory.mkdir(parents=True, exist_ok=True)
        files = write_bundle(self.bundle(), directory, self.spec.name)
        self.spec.save(directory)
        manifest = RunManifest(
            name=self.spec.name,
            output_directory=f"{self.spec.name}_results",
            k_grid=[self.spec.k],
            **files,
        )
        manifest.save(directory)
        return manifest


def user_ids(n_users: int) -> list[str]:
    width = len(str(n_users - 1))
    return [f"u{i:0{width}d}" for i in range(n_users)]


def generate(spec: SynthSpec, verbosity_level: int = 0) -> SyntheticData:
    """:raises ValueError: if the spec cannot be realized, a dimension with fewer
    values than a user may hold or too few non-friends to fill a candidate set"""
    for h, size in enumerate(spec.dimension_sizes):
        if size < spec.max_values_per_user:
            raise ValueError(
                f"dimension {h} has {size} values but users may hold "
                f"{spec.max_values_per_user}"
            )
    optprint = get_printer(verbosity_level, verbosity_threshold=SUMMARY)
    rng = np.random.default_rng(spec.seed)
    users = user_ids(spec.n_users)
    n = spec.n_users

    holdings, tastes = [], []
    for size in spec.dimension_sizes:
        popularity = rng.dirichlet(np.ones(size))
        extra = rng.poisson(spec.mean_values_per_user - 1, size=n)
        counts = np.clip(1 + extra, 1, spec.max_values_per_user)
        held = np.zeros((n, size))
        for i in range(n):
            held[i, rng.choice(size, counts[i], replace=False, p=popularity)] = 1.0
        holdings.append(held)
        tastes.append(
            rng.dirichlet(np.full(size, 1 / spec.preference_concentration), size=n)
        )

    shares = sum(_taste_share(taste, held) for taste, held in zip(tastes, holdings))
    match = shares / len(tastes)
    affinity = shares + shares.T
    adjacency = np.zeros((n, n), dtype=bool)
    snapshots = []
    for n_friends in spec.friends_per_snapshot:
        for i in range(n):
            _add_friends(rng, adjacency, affinity, i, n_friends)
        snapshots.append(_edge_set(adjacency, users))

    shared = adjacency.astype(np.int64) @ adjacency.astype(np.int64)
    noise = rng.normal(0.0, spec.likelihood_noise, size=(n, n))
    likelihood = 1 / (1 + np.exp(-(np.log1p(shared) + noise - LIKELIHOOD_OFFSET)))

    acceptance = spec.acceptance_model
    candidates, accepted = {}, []
    for i, user in enumerate(users):
        others = np.flatnonzero(~adjacency[i])
        others = others[others != i]
        if others.size < spec.m:
            raise ValueError(
                f"{user} has {others.size} non-friends, too few for {spec.m} candidates"
            )
        ranked = others[np.lexsort((others, -likelihood[i, others]))][: spec.m]
        candidates[user] = CandidateSet(
            user,
            tuple(users[j] for j in ranked),
            tuple(float(likelihood[i, j]) for j in ranked),
        )
        logit = (
            acceptance.intercept
            + acceptance.preference_weight * match[i, ranked]
            + acceptance.likelihood_weight * likelihood[i, ranked]
        )
        accepts = rng.random(ranked.size) < 1 / (1 + np.exp(-logit))
        accepted += [canonical_edge(user, users[j]) for j in ranked[accepts]]

    final = snapshots[-1] | frozenset(accepted)
    snapshots.append(final)
    truth: dict[str, set[str]] = {}
    for a, b in sorted(final - snapshots[-2]):
        truth.setdefault(a, set()).add(b)
        truth.setdefault(b, set()).add(a)

    profiles = ProfileStore.from_triples(
        [
            (users[i], name, f"v{z}")
            for name, held in zip(spec.dimension_names, holdings)
            for i, z in zip(*np.nonzero(held))
        ],
        dimensions=spec.dimension_names,
    )
    optprint(
        f"{spec.name}: {n} users, "
        + ", ".join(f"snapshot {p} {len(e)} edges" for p, e in enumerate(snapshots))
    )
    return SyntheticData(
        spec,
        users,
        snapshots,
        profiles,
        candidates,
        {user: frozenset(friends) for user, friends in sorted(truth.items())},
        tastes,
        match,
    )


def _taste_share(taste: NDArray, held: NDArray) -> NDArray:
    """Entry (i, j) is the mean over the values j holds of the taste of i for them"""
    return taste @ (held / held.sum(axis=1, keepdims=True)).T


def _add_friends(
    rng: np.random.Generator,
    adjacency: NDArray,
    affinity: NDArray,
    i: int,
    n_friends: int,
) -> None:
    available = ~adjacency[i]
    available[i] = False
    pool = np.flatnonzero(available)
    if not pool.size:
        return
    scores = HOMOPHILY * affinity[i, pool]
    weights = np.exp(scores - scores.max())
    chosen = rng.choice(
        pool, min(n_friends, pool.size), replace=False, p=weights / weights.sum()
    )
    adjacency[i, chosen] = True
    adjacency[chosen, i] = True


def _edge_set(adjacency: NDArray, users: list[str]) -> frozenset[tuple[str, str]]:
    rows, cols = np.nonzero(np.triu(adjacency, k=1))
    return frozenset(canonical_edge(users[a], users[b]) for a, b in zip(rows, cols))
