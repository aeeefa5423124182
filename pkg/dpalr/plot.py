"""script to plot solver convergence from the traces of a recommend run

usage:
python -m dpalr.plot "path to run output directory"

plots are saved to the run output directory.
"""

import sys
from pathlib import Path
import numpy as np
import matplotlib.pyplot as plt

from .data import TraceRecord
from .load import load_run

# number of traces drawn in line plots
MAX_LINES = 50


def plot_error_norms(traces: list[TraceRecord], path: Path) -> None:
    """Error vector norm against outer iteration for every solve"""
    plt.figure(figsize=(5, 4))
    for trace in traces[:MAX_LINES]:
        plt.semilogy(
            [record.l for record in trace.iterations],
            [max(record.error_norm, 1e-16) for record in trace.iterations],
            "k-",
            alpha=0.3,
        )
    plt.xlabel("iteration")
    plt.ylabel("error norm")
    plt.savefig(path)
    plt.close()


def plot_parameter_paths(traces: list[TraceRecord], path: Path, dimension: int = 0):
    """gamma and beta of one included dimension against iteration, one line per solve.
    Solves of the same instance from different initial parameters should end at the
    same values."""
    fig, (gamma_ax, beta_ax) = plt.subplots(1, 2, figsize=(9, 4))
    for trace in traces[:MAX_LINES]:
        iterations = [record.l for record in trace.iterations]
        if not trace.iterations or dimension >= len(trace.iterations[0].gamma):
            continue
        gamma_ax.plot(
            iterations, [record.gamma[dimension] for record in trace.iterations], "b.-"
        )
        beta_ax.plot(
            iterations, [record.beta[dimension] for record in trace.iterations], "r.-"
        )
    gamma_ax.set(xlabel="iteration", ylabel="gamma")
    beta_ax.set(xlabel="iteration", ylabel="beta")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_iteration_counts(traces: list[TraceRecord], path: Path) -> None:
    counts = np.array([len(trace.iterations) for trace in traces], dtype=int)
    plt.figure(figsize=(5, 4))
    if counts.size:
        plt.hist(counts, bins=np.arange(0.5, counts.max() + 1.5), color="grey")
        plt.axvline(counts.mean(), color="k", linestyle="--", label="mean")
        plt.legend()
    plt.xlabel("outer iterations")
    plt.ylabel("solves")
    plt.savefig(path)
    plt.close()


def plot(run_directory: Path, output_dir: Path | None = None) -> None:
    results = load_run(run_directory)
    if output_dir is None:
        output_dir = Path(run_directory)
    output_dir.mkdir(exist_ok=True, parents=True)
    plot_error_norms(results.traces, output_dir / "error_norms.pdf")
    plot_parameter_paths(results.traces, output_dir / "parameter_paths.pdf")
    plot_iteration_counts(results.traces, output_dir / "iteration_counts.pdf")


if __name__ == "__main__":
    plot(Path(sys.argv[1]))
