"""Result records written by the experiment drivers.

Recommendations, traces and per user errors are written one JSON object per line.
Metric and oracle gap reports are single JSON documents.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TypeVar
from serde import serde
from serde.json import to_json, from_json

from ..solver import SolveTrace

ConfigValues = dict[str, int | float | None]
Scores = dict[str, float | None]


@serde
@dataclass(frozen=True)
class TraceSummary:
    iterations: int
    converged: bool
    final_error_norm: float
    best_iteration: int
    h_effective: int
    excluded_dimensions: list[int]
    subproblem_failures: int

    @classmethod
    def from_trace(cls, trace: SolveTrace) -> "TraceSummary":
        return cls(
            iterations=trace.iteration_count,
            converged=trace.converged,
            final_error_norm=float(trace.final_error_norm),
            best_iteration=trace.best_iteration,
            h_effective=trace.h_effective,
            excluded_dimensions=[int(h) for h in trace.excluded_dimensions],
            subproblem_failures=trace.subproblem_failures,
        )


@serde
@dataclass(frozen=True)
class RecommendationRecord:
    user: str
    method: str
    config: ConfigValues
    selected: list[str]
    scores: Scores = field(default_factory=dict)
    trace_summary: TraceSummary | None = None

    @property
    def block(self) -> tuple[int, int | None]:
        return self.config["k"], self.config.get("candidate_size")


@serde
@dataclass(frozen=True)
class IterationSummary:
    l: int
    gamma: list[float]
    beta: list[float]
    error_norm: float
    subproblem_steps: int
    degenerate: list[int]


@serde
@dataclass(frozen=True)
class TraceRecord:
    user: str
    method: str
    config: ConfigValues
    converged: bool
    iterations: list[IterationSummary]

    @classmethod
    def from_trace(
        cls, user: str, method: str, config: ConfigValues, trace: SolveTrace
    ) -> "TraceRecord":
        return cls(
            user,
            method,
            config,
            trace.converged,
            [
                IterationSummary(
                    l=record.l,
                    gamma=[float(g) for g in record.gamma],
                    beta=[float(b) for b in record.beta],
                    error_norm=float(record.error_norm),
                    subproblem_steps=record.subproblem_steps,
                    degenerate=[int(h) for h in record.degenerate],
                )
                for record in trace.iterations
            ],
        )


@serde
@dataclass(frozen=True)
class ErrorRecord:
    user: str
    method: str
    config: ConfigValues
    error: str
    message: str


@serde
@dataclass(frozen=True)
class MethodRow:
    """Means of one method with the reference method's improvement over it in
    percent and the paired test p-value, both keyed by metric"""

    label: str
    n_users: int
    means: Scores
    improvement: Scores
    t_statistic: Scores
    p_value: Scores
    degenerate: list[str]


@serde
@dataclass(frozen=True)
class BlockReport:
    k: int
    candidate_size: int | None
    n_users: int
    excluded_users: int
    rows: list[MethodRow]


@serde
@dataclass(frozen=True)
class MetricsReport:
    reference: str
    blocks: list[BlockReport]


@serde
@dataclass(frozen=True)
class GapRow:
    candidate_size: int
    k: int
    n_users: int
    mean_optimal: float | None
    mean_approximate: float | None
    mean_difference: float | None
    mean_overlap: float | None
    skipped: bool = False


@serde
@dataclass(frozen=True)
class GapReport:
    rows: list[GapRow]


T = TypeVar("T")


def write_jsonl(path: Path, records: Iterable) -> None:
    with open(path, "w", encoding="utf-8") as outfile:
        for record in records:
            outfile.write(to_json(record) + "\n")


def read_jsonl(path: Path, cls: type[T]) -> list[T]:
    with open(path, "r", encoding="utf-8") as infile:
        return [from_json(cls, line) for line in infile if line.strip()]


def write_json(path: Path, report) -> None:
    with open(path, "w", encoding="utf-8") as outfile:
        outfile.write(to_json(report) + "\n")


def read_json(path: Path, cls: type[T]) -> T:
    with open(path, "r", encoding="utf-8") as infile:
        return from_json(cls, infile.read())
