import pytest

from dpalr import (
    ingest,
    IngestError,
    DanglingIdError,
    write_bundle,
    check_two_hop,
    read_candidates,
)
from .conftest import KAREN_DIRECTORY


def _write(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


@pytest.fixture
def small_inputs(tmp_path):
    edges = _write(tmp_path / "edges.tsv", ["a\tb", "b\tc", "c\td"])
    profiles = _write(tmp_path / "profiles.tsv", ["b\tmajor\tIS", "c\tmajor\tCS"])
    candidates = _write(tmp_path / "candidates.tsv", ["a\tc\t0.5", "a\td\t0.25"])
    return edges, profiles, candidates


def test_karen_bundle(karen_bundle):
    summary = karen_bundle.summary()
    assert summary["users"] == 37
    assert summary["edges"] == 36
    assert summary["users_with_candidates"] == 1
    assert summary["candidates"] == 6
    assert karen_bundle.truth == {"Karen": frozenset({"u1", "u5"})}
    assert karen_bundle.profiles.vocabularies == (("CS", "Fin", "IS", "Math"),)
    assert check_two_hop(karen_bundle) == {}


def test_candidates_keep_file_order(karen_bundle):
    candidates = karen_bundle.candidates["Karen"]
    assert candidates.candidates == ("u1", "u2", "u3", "u4", "u5", "u6")
    assert candidates.likelihoods == (0.9, 0.8, 0.7, 0.6, 0.5, 0.4)


def test_empty_candidate_file(tmp_path, small_inputs):
    edges, profiles, _ = small_inputs
    empty = _write(tmp_path / "empty.tsv", [])
    bundle = ingest([edges], profiles, empty)
    assert bundle.users == []
    assert bundle.truth is None


def test_dangling_candidate(tmp_path, small_inputs):
    edges, profiles, _ = small_inputs
    candidates = _write(tmp_path / "dangling.tsv", ["a\tc\t0.5", "a\tzed\t0.1"])
    with pytest.raises(DanglingIdError) as error:
        ingest([edges], profiles, candidates)
    assert error.value.offenders == ["zed"]


def test_dangling_profile(tmp_path, small_inputs):
    edges, _, candidates = small_inputs
    profiles = _write(tmp_path / "profiles.tsv", ["ghost\tmajor\tIS"])
    with pytest.raises(DanglingIdError):
        ingest([edges], profiles, candidates)


@pytest.mark.parametrize(
    "lines, bad_line",
    [
        (["a\tc\t0.5", "a\td"], 2),
        (["a\tc\t0.5", "", "a\td\tlikely"], 3),
        (["a\tc\tnan"], 1),
        (["a\tc\t0.5", "a\tc\t0.4"], 2),
    ],
)
def test_malformed_candidate_lines(tmp_path, small_inputs, lines, bad_line):
    edges, profiles, _ = small_inputs
    candidates = _write(tmp_path / "bad.tsv", lines)
    with pytest.raises(IngestError) as error:
        ingest([edges], profiles, candidates)
    assert error.value.line == bad_line
    assert f"bad.tsv:{bad_line}:" in str(error.value)


def test_candidate_already_a_friend(tmp_path, small_inputs):
    edges, profiles, _ = small_inputs
    candidates = _write(tmp_path / "friends.tsv", ["a\tc\t0.5", "a\tb\t0.3"])
    with pytest.raises(IngestError) as error:
        ingest([edges], profiles, candidates)
    assert error.value.line == 2
    assert "b is already a friend of a" in str(error.value)


def test_friend_from_any_snapshot_is_rejected(tmp_path, small_inputs):
    edges, profiles, _ = small_inputs
    later = _write(tmp_path / "later.tsv", ["a\te"])
    candidates = _write(tmp_path / "friends.tsv", ["a\tc\t0.5"])
    ingest([edges, later], profiles, candidates)

    candidates = _write(tmp_path / "friends.tsv", ["a\te\t0.5"])
    with pytest.raises(IngestError):
        ingest([edges, later], profiles, candidates)


def test_self_loop(tmp_path, small_inputs):
    _, profiles, candidates = small_inputs
    edges = _write(tmp_path / "loop.tsv", ["a\tb", "c\tc"])
    with pytest.raises(IngestError) as error:
        ingest([edges], profiles, candidates)
    assert error.value.line == 2


def test_duplicate_edges_dropped_with_warning(tmp_path, small_inputs, capsys):
    _, profiles, candidates = small_inputs
    edges = _write(tmp_path / "edges.tsv", ["a\tb", "b\tc", "c\td", "b\ta"])
    bundle = ingest([edges], profiles, candidates)
    assert len(bundle.graph.edges) == 3
    assert "duplicate edge" in capsys.readouterr().out


def test_snapshots(tmp_path, small_inputs):
    edges, profiles, candidates = small_inputs
    later = _write(tmp_path / "later.tsv", ["a\te"])
    bundle = ingest([edges, later], profiles, candidates)
    assert bundle.graph.period == 1
    assert bundle.graph.snapshot_label == "later"
    assert bundle.graph.first_period(("a", "e")) == 1
    assert bundle.graph.first_period(("a", "b")) == 0


def test_two_hop_violation(tmp_path, small_inputs):
    edges, profiles, candidates = small_inputs
    bundle = ingest([edges], profiles, candidates)
    assert check_two_hop(bundle) == {"a": ["d"]}


def test_write_bundle_round_trip(tmp_path, karen_bundle):
    files = write_bundle(karen_bundle, tmp_path, "karen")
    bundle = ingest(
        [tmp_path / name for name in files["edge_paths"]],
        tmp_path / files["profile_path"],
        tmp_path / files["candidate_path"],
        tmp_path / files["truth_path"],
    )
    assert bundle.graph.edges == karen_bundle.graph.edges
    assert bundle.profiles == karen_bundle.profiles
    assert bundle.candidates == karen_bundle.candidates
    assert bundle.truth == karen_bundle.truth


def test_read_candidates_line_numbers():
    rows = read_candidates(KAREN_DIRECTORY / "candidates.tsv")
    assert [row[0] for row in rows] == list(range(1, 7))
