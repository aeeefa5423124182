"""Read and validate the input files of an experiment into one in memory bundle.

Every user id referenced by a profile, candidate or truth line must be a user of the
social graph and no candidate may already be a friend of their user. Duplicate edges within one edge file are dropped with a warning.
Multiple edge files are successive snapshots with the last being the current period.
"""

from dataclasses import dataclass
from pathlib import Path

from ..printing import get_printer, get_warner, SUMMARY
from ..params import FriendScope, AllFriends, RunManifest
from ..model import (
    SocialGraph,
    ProfileStore,
    CandidateSet,
    UserInstance,
    canonical_edge,
    get_user_instance,
)
from .formats import (
    IngestError,
    read_edges,
    read_profiles,
    read_candidates,
    read_truth,
    write_edges,
    write_profiles,
    write_candidates,
    write_truth,
)


class DanglingIdError(IngestError):
    """Raised when input lines reference users missing from the social graph"""

    def __init__(self, path, offenders: list[str]):
        self.offenders = offenders
        shown = ", ".join(offenders[:20])
        more = f" and {len(offenders) - 20} more" if len(offenders) > 20 else ""
        super().__init__(path, None, f"unknown user ids {shown}{more}")


@dataclass(frozen=True)
class Bundle:
    graph: SocialGraph
    profiles: ProfileStore
    candidates: dict[str, CandidateSet]
    truth: dict[str, frozenset[str]] | None = None

    @property
    def users(self) -> list[str]:
        """Users with a candidate set, in sorted order"""
        return sorted(self.candidates)

    def instance(
        self, user: str, friend_scope: FriendScope = AllFriends()
    ) -> UserInstance:
        return get_user_instance(
            self.graph, self.profiles, self.candidates[user], friend_scope
        )

    def summary(self) -> dict:
        return {
            **self.graph.summary(),
            "users_with_candidates": len(self.candidates),
            "candidates": sum(c.m for c in self.candidates.values()),
            "users_with_truth": 0 if self.truth is None else len(self.truth),
            "dimensions": self.profiles.summary(),
        }


def ingest(
    edge_paths: list[Path],
    profile_path: Path,
    candidate_path: Path,
    truth_path: Path | None = None,
    verbosity_level: int = 0,
) -> Bundle:
    """Validated bundle from the input files.

    :raises IngestError: for a malformed line or a candidate who is already a friend
    :raises DanglingIdError: listing every referenced id unknown to the graph
    """
    warn = get_warner(verbosity_level)
    optprint = get_printer(verbosity_level, verbosity_threshold=SUMMARY)

    snapshots = []
    for path in edge_paths:
        seen = set()
        snapshot = []
        for line, a, b in read_edges(path):
            edge = canonical_edge(a, b)
            if edge in seen:
                warn(f"{path}:{line}: duplicate edge {a} {b} dropped")
                continue
            seen.add(edge)
            snapshot.append(edge)
        snapshots.append(snapshot)
    graph = SocialGraph.from_snapshots(
        snapshots, labels=[Path(p).stem for p in edge_paths]
    )

    triples = read_profiles(profile_path)
    _check_known(profile_path, graph, (user for user, _, _ in triples))
    profiles = ProfileStore.from_triples(triples)

    rows = read_candidates(candidate_path)
    _check_known(
        candidate_path, graph, (u for _, user, cand, _ in rows for u in (user, cand))
    )
    candidates = _group_candidates(candidate_path, rows, graph)

    truth = None
    if truth_path is not None:
        truth_rows = read_truth(truth_path)
        _check_known(
            truth_path, graph, (u for _, user, friend in truth_rows for u in (user, friend))
        )
        collected: dict[str, set[str]] = {}
        for _, user, friend in truth_rows:
            collected.setdefault(user, set()).add(friend)
        truth = {user: frozenset(friends) for user, friends in sorted(collected.items())}

    bundle = Bundle(graph, profiles, candidates, truth)
    summary = bundle.summary()
    optprint(
        f"ingested {summary['users']} users, {summary['edges']} edges, "
        f"{summary['users_with_candidates']} users with candidates"
    )
    for row in summary["dimensions"]:
        optprint(f"  {row['dimension']}: Z={row['values']}")
    return bundle


def ingest_manifest(manifest: RunManifest, verbosity_level: int = 0) -> Bundle:
    return ingest(
        [Path(p) for p in manifest.edge_paths],
        Path(manifest.profile_path),
        Path(manifest.candidate_path),
        None if manifest.truth_path is None else Path(manifest.truth_path),
        verbosity_level=verbosity_level,
    )


def _check_known(path: Path, graph: SocialGraph, ids) -> None:
    offenders = sorted(set(ids) - graph.users)
    if offenders:
        raise DanglingIdError(path, offenders)


def _group_candidates(path: Path, rows, graph: SocialGraph) -> dict[str, CandidateSet]:
    grouped: dict[str, tuple[list[str], list[float]]] = {}
    first_line: dict[str, int] = {}
    for line, user, candidate, likelihood in rows:
        ids, likelihoods = grouped.setdefault(user, ([], []))
        first_line.setdefault(user, line)
        if candidate in ids:
            raise IngestError(path, line, f"candidate {candidate} repeated for {user}")
        if graph.has_edge(user, candidate):
            raise IngestError(
                path, line, f"candidate {candidate} is already a friend of {user}"
            )
        ids.append(candidate)
        likelihoods.append(likelihood)

    candidates = {}
    for user in sorted(grouped):
        ids, likelihoods = grouped[user]
        try:
            candidates[user] = CandidateSet(user, tuple(ids), tuple(likelihoods))
        except ValueError as e:
            raise IngestError(path, first_line[user], str(e)) from e
    return candidates


def check_two_hop(bundle: Bundle) -> dict[str, list[str]]:
    """Candidates who are not exactly two hops from their user, by user"""
    violations = {}
    for user, candidate_set in bundle.candidates.items():
        two_hop = bundle.graph.two_hop_users(user)
        outside = sorted(set(candidate_set.candidates) - two_hop)
        if outside:
            violations[user] = outside
    return violations


def write_bundle(bundle: Bundle, directory: Path, name: str) -> dict[str, object]:
    """Write the bundle in the input formats and return the file names written,
    relative to directory. One edge file is written per snapshot holding the edges
    first appearing in it."""
    graph = bundle.graph
    edge_files = []
    for period in range(graph.period + 1):
        file_name = f"{name}_edges_{period}.tsv"
        write_edges(
            directory / file_name,
            [edge for edge in graph.edges if graph.first_period(edge) == period],
        )
        edge_files.append(file_name)

    files = {
        "edge_paths": edge_files,
        "profile_path": f"{name}_profiles.tsv",
        "candidate_path": f"{name}_candidates.tsv",
        "truth_path": None,
    }
    write_profiles(directory / files["profile_path"], bundle.profiles.triples())
    write_candidates(
        directory / files["candidate_path"],
        [
            (user, candidate, likelihood)
            for user in bundle.users
            for candidate, likelihood in zip(
                bundle.candidates[user].candidates, bundle.candidates[user].likelihoods
            )
        ],
    )
    if bundle.truth is not None:
        files["truth_path"] = f"{name}_truth.tsv"
        write_truth(directory / files["truth_path"], bundle.truth)
    return files
