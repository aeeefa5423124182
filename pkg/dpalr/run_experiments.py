"""Batch drivers for the experimental pipeline.

recommend   every configured method for every user with a candidate set
evaluate    accuracy and diversity preference metrics against the test period
oracle-gap  rounded iterative solution against the exhaustive optimum
sweep       recommend followed by evaluate over the full parameter grid

Users are independent tasks. With parallelism above one they are distributed over a
process pool holding the bundle, and results are merged in sorted user order so the
output does not depend on the number of workers. A failure for one user and method is
recorded in the errors file and the run continues.
"""

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from math import comb
from pathlib import Path
from zlib import crc32
import numpy as np

from . import __version__
from .printing import get_printer, get_warner, format_table, SUMMARY, PROGRESS
from .params import (
    RunManifest,
    SolverConfig,
    MethodConfig,
    DPALRConfig,
    method_config,
    method_sort_key,
    MISSING_TRUTH_POLICIES,
)
from .model import UserInstance
from .solver import (
    NoIncludedDimensionsError,
    get_instance_context,
    solve_user,
    context_objective,
    to_decision,
)
from .baselines import pairwise_dissimilarity
from .methods import get_selector
from .metrics import (
    METRIC_NAMES,
    EvaluationRecord,
    context_dpms,
    precision_recall_f1,
    dcg,
    aggregate,
)
from .oracle import (
    context_optimal,
    objective_difference,
    recommendation_overlap,
)
from .data import (
    Bundle,
    ingest_manifest,
    read_truth,
    RecommendationRecord,
    TraceRecord,
    TraceSummary,
    ErrorRecord,
    MethodRow,
    BlockReport,
    MetricsReport,
    GapRow,
    GapReport,
    write_jsonl,
    read_jsonl,
    write_json,
)

RECOMMENDATIONS_FILE = "recommendations.jsonl"
TRACES_FILE = "traces.jsonl"
ERRORS_FILE = "errors.jsonl"
METRICS_FILE = "metrics.json"
METRICS_TABLE_FILE = "metrics.txt"
GAP_FILE = "oracle_gap.json"
GAP_TABLE_FILE = "oracle_gap.txt"
GAP_ERRORS_FILE = "oracle_gap_errors.jsonl"


@dataclass(frozen=True)
class RecommendOutput:
    records: list[RecommendationRecord]
    traces: list[TraceRecord]
    errors: list[ErrorRecord]


def user_solver_config(manifest: RunManifest, user: str) -> SolverConfig:
    """Solver settings with a random initialization seed derived from the run seed
    and the user id, so that each user's result does not depend on scheduling"""
    sequence = np.random.SeedSequence(
        [manifest.seed, manifest.solver.init_seed, crc32(user.encode("utf-8"))]
    )
    return replace(manifest.solver, init_seed=int(sequence.generate_state(1)[0]))


def selected_users(bundle: Bundle, manifest: RunManifest) -> list[str]:
    users = bundle.users
    if manifest.max_users is not None:
        users = users[: manifest.max_users]
    return users


# state of every worker process, set once by the pool initializer
_worker_state: dict = {}


def _init_worker(bundle: Bundle, manifest: RunManifest, points: list[MethodConfig]):
    _worker_state["bundle"] = bundle
    _worker_state["manifest"] = manifest
    _worker_state["points"] = points


def _map_users(task, users, bundle, manifest, points) -> list:
    """Results of task for every user in user order"""
    if manifest.parallelism == 1 or len(users) < 2:
        _init_worker(bundle, manifest, points)
        return [task(user) for user in users]
    with ProcessPoolExecutor(
        max_workers=manifest.parallelism,
        initializer=_init_worker,
        initargs=(bundle, manifest, points),
    ) as executor:
        chunksize = max(1, len(users) // (4 * manifest.parallelism))
        return list(executor.map(task, users, chunksize=chunksize))


def _error(user: str, config: MethodConfig, e: Exception) -> ErrorRecord:
    return ErrorRecord(user, config.method, config.as_dict(), type(e).__name__, str(e))


def recommend_user(user: str) -> RecommendOutput:
    """Run every configuration point for one user"""
    bundle: Bundle = _worker_state["bundle"]
    manifest: RunManifest = _worker_state["manifest"]
    points: list[MethodConfig] = _worker_state["points"]
    solver_config = user_solver_config(manifest, user)

    records, traces, errors = [], [], []
    try:
        full_instance = bundle.instance(user, manifest.friend_scope)
    except Exception as e:
        return RecommendOutput([], [], [_error(user, config, e) for config in points])

    instances: dict[int | None, UserInstance] = {}
    dissimilarities = {}
    for config in points:
        size = config.candidate_size
        if size not in instances:
            instances[size] = full_instance.truncate(size)
        instance = instances[size]
        try:
            if size not in dissimilarities:
                dissimilarities[size] = pairwise_dissimilarity(
                    bundle.profiles, instance.candidates.candidates
                )
            result = get_selector(config, solver_config)(
                instance, bundle.profiles, dissimilarities[size]
            )
        except Exception as e:
            errors.append(_error(user, config, e))
            continue

        scores = _diversity_scores(instance, result.selected)
        trace_summary = None
        if result.recommendation is not None:
            trace = result.recommendation.trace
            trace_summary = TraceSummary.from_trace(trace)
            traces.append(
                TraceRecord.from_trace(user, config.method, config.as_dict(), trace)
            )
        records.append(
            RecommendationRecord(
                user=user,
                method=config.method,
                config=config.as_dict(),
                selected=[instance.candidates.candidates[q] for q in result.selected],
                scores=scores,
                trace_summary=trace_summary,
            )
        )
    return RecommendOutput(records, traces, errors)


def _diversity_scores(instance: UserInstance, selected: list[int]) -> dict:
    try:
        context = get_instance_context(instance)
    except NoIncludedDimensionsError:
        return {"DPMS": None, "objective": None}
    return {
        "DPMS": context_dpms(context, selected),
        "objective": context_objective(context, to_decision(selected, context.m)),
    }


def run_recommend(
    manifest: RunManifest, bundle: Bundle | None = None, verbosity_level: int = 0
) -> RecommendOutput:
    """Recommend for every user and configuration point, writing the
    recommendations, traces and errors files to the output directory"""
    optprint = get_printer(verbosity_level, verbosity_threshold=SUMMARY)
    progress = get_printer(verbosity_level, verbosity_threshold=PROGRESS)
    warn = get_warner(verbosity_level)
    optprint(f"dpalrv{__version__}: {manifest.name} recommend")
    if bundle is None:
        manifest.validate()
        bundle = ingest_manifest(manifest, verbosity_level=verbosity_level)

    points = manifest.expand_config_points()
    users = selected_users(bundle, manifest)
    optprint(f"{len(users)} users, {len(points)} configuration points")

    outputs = _map_users(recommend_user, users, bundle, manifest, points)
    records, traces, errors = [], [], []
    for user, output in zip(users, outputs):
        progress(f"{user}: {len(output.records)} recommendations")
        records += output.records
        traces += output.traces
        errors += output.errors
    for error in errors:
        warn(f"{error.user} {error.method} {error.config} failed: {error.message}")

    directory = Path(manifest.output_directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_jsonl(directory / RECOMMENDATIONS_FILE, records)
    write_jsonl(directory / TRACES_FILE, traces)
    write_jsonl(directory / ERRORS_FILE, errors)
    optprint(f"{len(records)} recommendations, {len(errors)} failures")
    return RecommendOutput(records, traces, errors)


def evaluate_records(
    records: list[RecommendationRecord],
    truth: dict[str, frozenset[str]],
    reference: str = "DPA-LR",
    missing_truth_policy: str = "exclude",
    verbosity_level: int = 0,
) -> MetricsReport:
    """Per block metric means of every method with paired comparisons against the
    reference method.

    A user absent from the truth added nobody. Such users are left out under the
    "exclude" missing_truth_policy and scored with zero hits under "count-as-zero".
    Within a block only users recommended for by every method are compared.

    :raises ValueError: for an unknown missing_truth_policy or a missing reference
    """
    if missing_truth_policy not in MISSING_TRUTH_POLICIES:
        raise ValueError(f"missing_truth_policy must be one of {MISSING_TRUTH_POLICIES}")
    warn = get_warner(verbosity_level)
    by_block: dict[tuple, dict[str, dict[str, RecommendationRecord]]] = defaultdict(
        lambda: defaultdict(dict)
    )
    configs: dict[str, MethodConfig] = {}
    for record in records:
        config = method_config(record.method, record.config)
        configs[config.label] = config
        by_block[config.block][config.label][record.user] = record

    blocks = []
    for block in sorted(by_block, key=lambda b: (b[0], -1 if b[1] is None else b[1])):
        by_label = by_block[block]
        labels = sorted(by_label, key=lambda label: method_sort_key(configs[label]))
        reference_label = _reference_label(labels, configs, reference)

        all_users = set().union(*(set(users) for users in by_label.values()))
        common = set.intersection(*(set(users) for users in by_label.values()))
        if missing_truth_policy == "exclude":
            common = {user for user in common if truth.get(user)}
        users = sorted(common)
        if len(all_users) > len(users):
            warn(
                f"k={block[0]} candidate_size={block[1]}: "
                f"{len(all_users) - len(users)} users excluded from comparison"
            )

        scores = {
            label: {user: _user_metrics(by_label[label][user], truth) for user in users}
            for label in labels
        }
        summaries = aggregate(scores, reference_label)
        rows = [
            MethodRow(
                label=summary.label,
                n_users=summary.n_users,
                means=summary.means,
                improvement={c.metric: c.improvement for c in summary.comparisons},
                t_statistic={c.metric: c.test.t_statistic for c in summary.comparisons},
                p_value={c.metric: c.test.p_value for c in summary.comparisons},
                degenerate=[c.metric for c in summary.comparisons if c.test.degenerate],
            )
            for summary in summaries
        ]
        blocks.append(
            BlockReport(block[0], block[1], len(users), len(all_users) - len(users), rows)
        )
    return MetricsReport(reference, blocks)


def _reference_label(labels: list[str], configs: dict, reference: str) -> str:
    for label in labels:
        if label == reference or configs[label].method == reference:
            return label
    raise ValueError(f"reference method {reference} was not run in every block")


def _user_metrics(record: RecommendationRecord, truth) -> dict[str, float | None]:
    evaluation = EvaluationRecord(
        record.user, record.selected, truth.get(record.user, frozenset())
    )
    accuracy = precision_recall_f1(evaluation)
    return {
        "DPMS": record.scores.get("DPMS"),
        "precision": accuracy.precision,
        "recall": accuracy.recall,
        "F1": accuracy.f1,
        "DCG": dcg(evaluation),
    }


def load_truth(path) -> dict[str, frozenset[str]]:
    collected: dict[str, set[str]] = defaultdict(set)
    for _, user, friend in read_truth(Path(path)):
        collected[user].add(friend)
    return {user: frozenset(friends) for user, friends in sorted(collected.items())}


def run_evaluate(manifest: RunManifest, verbosity_level: int = 0) -> MetricsReport:
    """Evaluate the recommendations file of a run against its truth file and write
    the json and text metric reports"""
    optprint = get_printer(verbosity_level, verbosity_threshold=SUMMARY)
    optprint(f"dpalrv{__version__}: {manifest.name} evaluate")
    if manifest.truth_path is None:
        raise ValueError(f"{manifest.name}: evaluation needs a truth_path")
    directory = Path(manifest.output_directory)
    records = read_jsonl(directory / RECOMMENDATIONS_FILE, RecommendationRecord)
    report = evaluate_records(
        records,
        load_truth(manifest.truth_path),
        reference=manifest.reference_method,
        missing_truth_policy=manifest.missing_truth_policy,
        verbosity_level=verbosity_level,
    )
    write_json(directory / METRICS_FILE, report)
    table = format_metrics_report(report)
    with open(directory / METRICS_TABLE_FILE, "w", encoding="utf-8") as outfile:
        outfile.write(table + "\n")
    optprint(table)
    return report


def _format_value(value: float | None, digits: int = 4) -> str:
    return "n/a" if value is None else f"{value:.{digits}f}"


def _format_improvement(value: float | None) -> str:
    return "" if value is None else f" ({value:+.2f}%)"


def _format_p_value(value: float | None, degenerate: bool) -> str:
    if value is None:
        return "n/a"
    return f"{value:.3g}" + ("*" if degenerate else "")


def format_metrics_report(report: MetricsReport) -> str:
    """Aligned text tables of means with the reference method's percentage
    improvement over each method in parentheses, followed by paired test p-values"""
    sections = []
    for block in report.blocks:
        size = "all" if block.candidate_size is None else block.candidate_size
        means = [
            [row.label]
            + [
                _format_value(row.means[metric])
                + _format_improvement(row.improvement[metric])
                for metric in METRIC_NAMES
            ]
            for row in block.rows
        ]
        p_values = [
            [row.label]
            + [
                _format_p_value(row.p_value[metric], metric in row.degenerate)
                for metric in METRIC_NAMES
            ]
            for row in block.rows
        ]
        sections.append(
            f"k={block.k} candidate_size={size} users={block.n_users} "
            f"excluded={block.excluded_users}\n"
            f"improvement of {report.reference} in parentheses\n"
            + format_table(["method"] + METRIC_NAMES, means)
            + f"\n\npaired t-test p-values against {report.reference} "
            "(* constant differences)\n"
            + format_table(["method"] + METRIC_NAMES, p_values)
        )
    return "\n\n".join(sections)


def gap_user(user: str) -> list[tuple | ErrorRecord]:
    """Approximate and optimal objective for one user at every grid point"""
    bundle: Bundle = _worker_state["bundle"]
    manifest: RunManifest = _worker_state["manifest"]
    points: list[MethodConfig] = _worker_state["points"]
    solver_config = user_solver_config(manifest, user)
    try:
        full_instance = bundle.instance(user, manifest.friend_scope)
    except Exception as e:
        return [_error(user, config, e) for config in points]

    results = []
    for config in points:
        instance = full_instance.truncate(config.candidate_size)
        try:
            context = get_instance_context(instance)
            approx = solve_user(instance, config.k, solver_config)
            oracle = context_optimal(context, config.k, manifest.oracle_budget)
        except Exception as e:
            results.append(_error(user, config, e))
            continue
        results.append(
            (
                oracle.optimal_objective,
                approx.objective_value,
                objective_difference(approx, oracle),
                recommendation_overlap(approx, oracle),
            )
        )
    return results


def run_oracle_gap(
    manifest: RunManifest, bundle: Bundle | None = None, verbosity_level: int = 0
) -> GapReport:
    """Mean optimal and approximate objectives, objective difference in percent and
    recommendation overlap for every (candidate set size, k) grid point.

    Grid points whose subset count exceeds the oracle budget are skipped.
    """
    optprint = get_printer(verbosity_level, verbosity_threshold=SUMMARY)
    warn = get_warner(verbosity_level)
    optprint(f"dpalrv{__version__}: {manifest.name} oracle-gap")
    if bundle is None:
        manifest.validate()
        bundle = ingest_manifest(manifest, verbosity_level=verbosity_level)
    users = selected_users(bundle, manifest)
    largest_m = max((bundle.candidates[user].m for user in users), default=0)

    points, skipped = [], []
    for k in sorted(manifest.k_grid):
        for size in manifest.candidate_size_grid:
            m = largest_m if size is None else min(size, largest_m)
            if k > m:
                warn(f"candidate_size={size} k={k}: fewer than k candidates, skipped")
                skipped.append(GapRow(m, k, 0, None, None, None, None, skipped=True))
                continue
            if comb(m, k) > manifest.oracle_budget:
                warn(
                    f"candidate_size={size} k={k}: C({m}, {k}) = {comb(m, k)} subsets "
                    f"exceeds the oracle budget, skipped"
                )
                skipped.append(GapRow(m, k, 0, None, None, None, None, skipped=True))
                continue
            points.append(DPALRConfig(k=k, candidate_size=size))

    outputs = _map_users(gap_user, users, bundle, manifest, points)
    errors = [r for output in outputs for r in output if isinstance(r, ErrorRecord)]
    for error in errors:
        warn(f"{error.user} {error.config} failed: {error.message}")

    rows = list(skipped)
    for i, config in enumerate(points):
        values = [
            output[i] for output in outputs if not isinstance(output[i], ErrorRecord)
        ]
        m = largest_m if config.candidate_size is None else config.candidate_size
        rows.append(_gap_row(m, config.k, values))
    rows.sort(key=lambda row: (row.k, row.candidate_size))
    report = GapReport(rows)

    directory = Path(manifest.output_directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_json(directory / GAP_FILE, report)
    write_jsonl(directory / GAP_ERRORS_FILE, errors)
    table = format_gap_report(report)
    with open(directory / GAP_TABLE_FILE, "w", encoding="utf-8") as outfile:
        outfile.write(table + "\n")
    optprint(table)
    return report


def _gap_row(m: int, k: int, values: list[tuple]) -> GapRow:
    def mean(column: int) -> float | None:
        applicable = [v[column] for v in values if v[column] is not None]
        return float(np.mean(applicable)) if applicable else None

    return GapRow(m, k, len(values), mean(0), mean(1), mean(2), mean(3))


def format_gap_report(report: GapReport) -> str:
    header = [
        "candidate set size",
        "k",
        "users",
        "optimal",
        "approximate",
        "difference (%)",
        "overlap",
    ]
    rows = [
        [
            str(row.candidate_size),
            str(row.k),
            "skipped" if row.skipped else str(row.n_users),
            _format_value(row.mean_optimal),
            _format_value(row.mean_approximate),
            _format_value(row.mean_difference, digits=2),
            _format_value(row.mean_overlap, digits=2),
        ]
        for row in report.rows
    ]
    return format_table(header, rows)


def run_sweep(manifest: RunManifest, verbosity_level: int = 0) -> MetricsReport:
    """Recommend and evaluate over the full k, weight and candidate set size grid"""
    manifest.validate(require_truth=True)
    bundle = ingest_manifest(manifest, verbosity_level=verbosity_level)
    run_recommend(manifest, bundle=bundle, verbosity_level=verbosity_level)
    return run_evaluate(manifest, verbosity_level=verbosity_level)
