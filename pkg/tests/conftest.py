from dataclasses import replace
from pathlib import Path
import pytest

from dpalr import ingest, RunManifest

KAREN_DIRECTORY = Path(__file__).parent / "fixtures" / "karen"


@pytest.fixture
def karen_bundle():
    return ingest(
        [KAREN_DIRECTORY / "edges.tsv"],
        KAREN_DIRECTORY / "profiles.tsv",
        KAREN_DIRECTORY / "candidates.tsv",
        KAREN_DIRECTORY / "truth.tsv",
    )


@pytest.fixture
def karen_manifest(tmp_path):
    """Karen run writing its output to a temporary directory"""
    manifest = RunManifest.load(KAREN_DIRECTORY / "karen.yml")
    return replace(manifest, output_directory=str(tmp_path / "karen_results"))
