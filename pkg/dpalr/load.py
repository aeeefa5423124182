"""Load the output of a recommend run for analysis and plotting"""

from dataclasses import dataclass
from pathlib import Path
import numpy as np
from numpy.typing import NDArray

from .params import method_config
from .data import (
    RecommendationRecord,
    TraceRecord,
    ErrorRecord,
    MetricsReport,
    read_jsonl,
    read_json,
)
from .run_experiments import (
    RECOMMENDATIONS_FILE,
    TRACES_FILE,
    ERRORS_FILE,
    METRICS_FILE,
)


@dataclass
class RunResults:
    records: list[RecommendationRecord]
    traces: list[TraceRecord]
    errors: list[ErrorRecord]
    metrics: MetricsReport | None = None

    def labels(self) -> list[str]:
        return sorted({_label(record) for record in self.records})

    def iteration_counts(self) -> NDArray:
        """Outer iterations of every traced solve"""
        return np.array([len(trace.iterations) for trace in self.traces], dtype=int)

    def converged_share(self) -> float:
        if not self.traces:
            return 0.0
        return float(np.mean([trace.converged for trace in self.traces]))


def _label(record: RecommendationRecord) -> str:
    return method_config(record.method, record.config).label


def load_run(directory: Path) -> RunResults:
    directory = Path(directory)
    metrics = None
    if (directory / METRICS_FILE).exists():
        metrics = read_json(directory / METRICS_FILE, MetricsReport)
    errors = []
    if (directory / ERRORS_FILE).exists():
        errors = read_jsonl(directory / ERRORS_FILE, ErrorRecord)
    return RunResults(
        read_jsonl(directory / RECOMMENDATIONS_FILE, RecommendationRecord),
        read_jsonl(directory / TRACES_FILE, TraceRecord),
        errors,
        metrics,
    )
