"""Script to generate a small synthetic network, recommend with every method, evaluate
against the test period and compare the iterative solution with the exact optimum"""

from dataclasses import replace
from pathlib import Path

from . import __version__
from .params import SynthSpec, RunManifest
from .synth import generate
from .run_experiments import run_recommend, run_evaluate, run_oracle_gap
from .plot import plot

DATA_DIRECTORY = Path("example_data")
EXAMPLE_SYNTH_SPEC = SynthSpec(
    name="example",
    seed=7,
    n_users=80,
    dimension_sizes=[5, 8, 6],
    friends_per_snapshot=[5, 3],
    m=16,
    k=5,
)
ORACLE_CANDIDATE_SIZES = [10, 12]


def create_and_save_config(data_directory: Path, spec: SynthSpec) -> RunManifest:
    """Generate the synthetic bundle and save it with its spec and a run manifest.
    The returned manifest has its paths resolved against data_directory."""
    data_directory.mkdir(exist_ok=True, parents=True)
    generate(spec).save(data_directory)
    return RunManifest.load(data_directory / f"{spec.name}.yml")


def main(data_directory: Path, spec: SynthSpec):
    print(f"dpalr version {__version__}")

    manifest = create_and_save_config(data_directory, spec)
    manifest = replace(manifest, methods=manifest.methods + ["TopK", "DPA-MMR"])
    run_recommend(manifest, verbosity_level=1)
    run_evaluate(manifest, verbosity_level=1)
    run_oracle_gap(
        replace(manifest, candidate_size_grid=ORACLE_CANDIDATE_SIZES),
        verbosity_level=1,
    )
    plot(Path(manifest.output_directory))


if __name__ == "__main__":
    main(DATA_DIRECTORY, EXAMPLE_SYNTH_SPEC)
