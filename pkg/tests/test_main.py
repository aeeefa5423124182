"""Exit codes and output files of the command line driver"""

from pathlib import Path
import pytest

from dpalr import SynthSpec
from dpalr.__main__ import main
from .conftest import KAREN_DIRECTORY

KAREN_MANIFEST = str(KAREN_DIRECTORY / "karen.yml")


def test_ingest_check(capsys):
    assert main(["ingest-check", KAREN_MANIFEST, "--two-hop"]) == 0
    out = capsys.readouterr().out
    assert "users with candidates" in out
    assert "major" in out


def test_recommend_and_evaluate(tmp_path):
    output = str(tmp_path / "out")
    assert main(["recommend", KAREN_MANIFEST, "-o", output, "--k", "2", "4"]) == 0
    assert (tmp_path / "out" / "recommendations.jsonl").exists()
    assert main(["evaluate", KAREN_MANIFEST, "-o", output]) == 0
    assert (tmp_path / "out" / "metrics.txt").exists()


def test_oracle_gap(tmp_path):
    assert main(["oracle-gap", KAREN_MANIFEST, "-o", str(tmp_path), "--k", "3"]) == 0
    assert (tmp_path / "oracle_gap.json").exists()


def test_sweep_with_overrides(tmp_path):
    arguments = [
        "sweep",
        KAREN_MANIFEST,
        "-o",
        str(tmp_path),
        "--methods",
        "DPA-LR",
        "MMR",
        "DPA-MMR",
        "--theta",
        "0.2",
        "0.8",
        "--sigma",
        "0.5",
        "--candidate-size",
        "none",
        "5",
    ]
    assert main(arguments) == 0
    lines = (tmp_path / "recommendations.jsonl").read_text().splitlines()
    assert len(lines) == 2 * (1 + 2 + 1)


def test_missing_manifest(tmp_path):
    assert main(["recommend", str(tmp_path / "missing.yml")]) == 2


def test_unknown_method(tmp_path):
    assert main(["recommend", KAREN_MANIFEST, "-o", str(tmp_path), "--methods", "Random"]) == 2


def test_dangling_ids(tmp_path, capsys):
    (tmp_path / "edges.tsv").write_text("a\tb\n")
    (tmp_path / "profiles.tsv").write_text("b\tmajor\tIS\n")
    (tmp_path / "candidates.tsv").write_text("a\tghost\t0.5\n")
    (tmp_path / "bad.yml").write_text(
        "name: bad\n"
        "edge_paths:\n- edges.tsv\n"
        "profile_path: profiles.tsv\n"
        "candidate_path: candidates.tsv\n"
        "output_directory: out\n"
    )
    assert main(["ingest-check", str(tmp_path / "bad.yml")]) == 2
    assert "ghost" in capsys.readouterr().err


@pytest.fixture
def loner_manifest(tmp_path) -> Path:
    (tmp_path / "edges.tsv").write_text("me\tf\nf\tc1\nf\tc2\n")
    (tmp_path / "profiles.tsv").write_text("c1\tmajor\tIS\nc2\tmajor\tCS\n")
    (tmp_path / "candidates.tsv").write_text("me\tc1\t0.6\nme\tc2\t0.4\n")
    path = tmp_path / "loner.yml"
    path.write_text(
        "name: loner\n"
        "edge_paths:\n- edges.tsv\n"
        "profile_path: profiles.tsv\n"
        "candidate_path: candidates.tsv\n"
        "output_directory: out\n"
        "methods:\n- DPA-LR\n- TopK\n"
        "k_grid:\n- 1\n"
    )
    return path


def test_failures_give_exit_code_one(loner_manifest):
    assert main(["recommend", str(loner_manifest)]) == 1
    assert main(["recommend", str(loner_manifest), "--allow-errors"]) == 0


def test_synth(tmp_path):
    spec = SynthSpec(
        name="tiny",
        n_users=60,
        dimension_sizes=[4, 5],
        friends_per_snapshot=[3, 2],
        m=8,
        k=3,
    )
    spec.save(tmp_path)
    output = tmp_path / "bundle"
    assert main(["synth", str(output), "--spec", str(tmp_path / "tiny_synth.yml"), "--seed", "2"]) == 0
    assert (output / "tiny.yml").exists()
    assert SynthSpec.load(output / "tiny_synth.yml").seed == 2
    assert main(["ingest-check", str(output / "tiny.yml")]) == 0


def test_synth_infeasible(tmp_path):
    assert main(["synth", str(tmp_path), "--n-users", "20"]) == 2
