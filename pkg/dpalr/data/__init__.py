from .formats import (
    IngestError,
    read_edges,
    read_profiles,
    read_candidates,
    read_truth,
    write_edges,
    write_profiles,
    write_candidates,
    write_truth,
)
from .ingest import (
    Bundle,
    DanglingIdError,
    ingest,
    ingest_manifest,
    check_two_hop,
    write_bundle,
)
from .records import (
    TraceSummary,
    RecommendationRecord,
    IterationSummary,
    TraceRecord,
    ErrorRecord,
    MethodRow,
    BlockReport,
    MetricsReport,
    GapRow,
    GapReport,
    write_jsonl,
    read_jsonl,
    write_json,
    read_json,
)
