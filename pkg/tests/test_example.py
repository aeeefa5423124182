"""Test that the example script still generates the expected synthetic spec and run
manifest and that the script runs end to end.

The test running the script main function is marked slow as it runs every method and
the exhaustive oracle.

To skip this test run pytest -m "not slow"
"""

from pathlib import Path
import pytest
from serde.yaml import from_yaml

from dpalr.example import EXAMPLE_SYNTH_SPEC, create_and_save_config, main
from dpalr import RunManifest, SynthSpec

REFERENCE_DIRECTORY = Path(__file__).parent / "reference_data"


def _read(cls, path):
    with open(path, "r") as infile:
        return from_yaml(cls, infile.read())


def test_example_manifest(tmp_path):
    """If this test fails the example no longer produces the same run manifest,
    perhaps some default values have changed."""
    create_and_save_config(tmp_path, EXAMPLE_SYNTH_SPEC)
    test_manifest = _read(RunManifest, tmp_path / "example.yml")
    reference_manifest = _read(RunManifest, REFERENCE_DIRECTORY / "example.yml")
    assert test_manifest == reference_manifest


def test_example_synth_spec(tmp_path):
    create_and_save_config(tmp_path, EXAMPLE_SYNTH_SPEC)
    assert SynthSpec.load(tmp_path / "example_synth.yml") == SynthSpec.load(
        REFERENCE_DIRECTORY / "example_synth.yml"
    )


@pytest.mark.slow
def test_example_script_runs(tmp_path):
    """Check the example script runs and plots with the specified parameters"""
    main(tmp_path, EXAMPLE_SYNTH_SPEC)
    results = tmp_path / "example_results"
    for name in ["metrics.txt", "oracle_gap.txt", "error_norms.pdf"]:
        assert (results / name).exists()
