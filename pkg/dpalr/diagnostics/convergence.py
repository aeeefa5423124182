"""Convergence and initialization dependence of the iterative solver on a small
synthetic network.

Every user is solved from several random initial parameters. The script writes the
iteration statistics and the share of users whose rounded recommendation is the same
for every initialization to diagnostics.txt and saves the convergence plots.
"""

from dataclasses import replace
from pathlib import Path
import numpy as np

from ..params import SynthSpec, SolverConfig
from ..synth import generate
from ..solver import NoIncludedDimensionsError, solve_user
from ..data import TraceRecord
from ..plot import plot_error_norms, plot_parameter_paths, plot_iteration_counts

DIAGNOSTIC_SPEC = SynthSpec(
    name="convergence",
    seed=1,
    n_users=60,
    dimension_sizes=[4, 6, 5],
    friends_per_snapshot=[4, 2],
    m=12,
    k=4,
)
N_INITIALIZATIONS = 5


def main(
    output_dir: Path,
    spec: SynthSpec = DIAGNOSTIC_SPEC,
    n_initializations: int = N_INITIALIZATIONS,
    solver_config: SolverConfig = SolverConfig(),
):
    output_dir.mkdir(exist_ok=True, parents=True)
    OUTPUT_FILE = output_dir / "diagnostics.txt"
    bundle = generate(spec).bundle()

    first_traces, user_traces = [], []
    iteration_counts, converged, identical = [], [], []
    for user in bundle.users:
        instance = bundle.instance(user)
        selections = set()
        for seed in range(n_initializations):
            config = replace(solver_config, init_seed=seed)
            try:
                recommendation = solve_user(instance, spec.k, config)
            except NoIncludedDimensionsError:
                break
            trace = TraceRecord.from_trace(user, "DPA-LR", {"k": spec.k}, recommendation.trace)
            if seed == 0:
                first_traces.append(trace)
            if user == bundle.users[0]:
                user_traces.append(trace)
            iteration_counts.append(recommendation.trace.iteration_count)
            converged.append(recommendation.trace.converged)
            selections.add(tuple(sorted(recommendation.selected_indices)))
        else:
            identical.append(len(selections) == 1)

    counts = np.array(iteration_counts)
    with open(OUTPUT_FILE, "w") as text_file:
        text_file.write(f"users solved {len(identical)}\n")
        text_file.write(f"solves {counts.size}\n")
        text_file.write(f"converged share {np.mean(converged):.4f}\n")
        text_file.write(f"mean iterations {counts.mean():.2f}\n")
        text_file.write(f"max iterations {counts.max()}\n")
        text_file.write(
            f"identical selections across initializations {np.mean(identical):.4f}\n"
        )

    plot_error_norms(first_traces, output_dir / "error_norms.pdf")
    plot_parameter_paths(user_traces, output_dir / "parameter_paths.pdf")
    plot_iteration_counts(first_traces, output_dir / "iteration_counts.pdf")


if __name__ == "__main__":
    main(Path("convergence_diagnostics"))
