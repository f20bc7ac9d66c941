"""Ground truth, error metrics, and workload-level evaluation reports."""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from .estimator import EstimateResult, EstimatorConfig, estimate
from .histogram import Histogram
from .patterns import LikePredicate, SequenceDatabase, like_matches, parse_like

POSITIVE_GROUPS = (1, 2)
NEGATIVE_GROUP = 3

# Positive-group queries at or below this true frequency are too small for a
# stable relative error and are dropped from the aggregates.
EXCLUSION_FREQUENCY = 10


class EvaluationError(ValueError):
    pass


def true_selectivity(p: LikePredicate | str, db: SequenceDatabase) -> tuple[int, float]:
    """Full-scan ground truth: (matching row count, fraction of the database)."""
    if isinstance(p, str):
        p = parse_like(p)
    count = sum(1 for row in db.rows if like_matches(p, row))
    if db.size == 0:
        return 0, 0.0
    return count, count / db.size


def relative_error(f_true: float, f_est: float) -> float:
    if f_true <= 0:
        raise EvaluationError("relative error is undefined for a non-positive true selectivity")
    return abs(f_true - f_est) / f_true


def absolute_error(f_true: float, f_est: float) -> float:
    return abs(f_est - f_true)


@dataclass(frozen=True)
class QueryRecord:
    group: int
    predicate: str
    true_count: int
    true_fraction: float
    estimate: EstimateResult
    error_kind: str  # "relative" | "absolute" | "excluded"
    error_value: float | None
    seconds: float


@dataclass(frozen=True)
class GroupAggregate:
    group: int
    query_count: int
    excluded_count: int
    mean_relative_error: float | None
    mean_absolute_error: float | None


@dataclass(frozen=True)
class EvaluationReport:
    records: tuple[QueryRecord, ...]
    aggregates: tuple[GroupAggregate, ...]
    mean_estimation_seconds: float


def evaluate(
    queries,
    db: SequenceDatabase,
    h: Histogram,
    cfg: EstimatorConfig | None = None,
) -> EvaluationReport:
    """Estimate every (group, predicate) query and score it against a scan.

    Positive groups (1 and 2) are scored by relative error, with queries of
    true frequency <= 10 excluded from the aggregates; the negative group
    (3) is scored by absolute error and never excluded.
    """
    if h.db_size != db.size:
        raise EvaluationError(
            f"catalog was built over {h.db_size} rows but the dataset has {db.size}"
        )
    records: list[QueryRecord] = []
    for group, raw in queries:
        if group not in POSITIVE_GROUPS and group != NEGATIVE_GROUP:
            raise EvaluationError(f"unknown query group {group}")
        if isinstance(raw, LikePredicate):
            raw = raw.raw
        started = time.perf_counter()
        res = estimate(raw, h, cfg)
        seconds = time.perf_counter() - started
        count, fraction = true_selectivity(raw, db)
        if group in POSITIVE_GROUPS:
            if count <= EXCLUSION_FREQUENCY:
                kind, value = "excluded", None
            else:
                kind, value = "relative", relative_error(fraction, res.selectivity)
        else:
            kind, value = "absolute", absolute_error(fraction, res.selectivity)
        records.append(
            QueryRecord(group, raw, count, fraction, res, kind, value, seconds)
        )
    aggregates = []
    for group in sorted({r.group for r in records}):
        members = [r for r in records if r.group == group]
        rel = [r.error_value for r in members if r.error_kind == "relative"]
        ab = [r.error_value for r in members if r.error_kind == "absolute"]
        aggregates.append(
            GroupAggregate(
                group=group,
                query_count=len(members),
                excluded_count=sum(1 for r in members if r.error_kind == "excluded"),
                mean_relative_error=sum(rel) / len(rel) if rel else None,
                mean_absolute_error=sum(ab) / len(ab) if ab else None,
            )
        )
    mean_seconds = sum(r.seconds for r in records) / len(records) if records else 0.0
    return EvaluationReport(tuple(records), tuple(aggregates), mean_seconds)


def write_report(report: EvaluationReport, destination) -> None:
    """TSV report: one row per query, then #AGG lines per group.

    Timing stays out of the file on purpose; everything written is a pure
    function of (workload, dataset, catalog, config), so repeated runs
    produce identical bytes.
    """
    lines = ["group\tpattern\ttrue_count\test_selectivity\tmatch_case\terror_kind\terror_value"]
    for r in report.records:
        value = "NA" if r.error_value is None else repr(r.error_value)
        lines.append(
            f"{r.group}\t{r.predicate}\t{r.true_count}\t{r.estimate.selectivity!r}"
            f"\t{r.estimate.match_case.name}\t{r.error_kind}\t{value}"
        )
    for a in report.aggregates:
        rel = "NA" if a.mean_relative_error is None else repr(a.mean_relative_error)
        ab = "NA" if a.mean_absolute_error is None else repr(a.mean_absolute_error)
        lines.append(
            f"#AGG\tgroup={a.group}\tqueries={a.query_count}\texcluded={a.excluded_count}"
            f"\tmean_relative_error={rel}\tmean_absolute_error={ab}"
        )
    Path(destination).write_text("\n".join(lines) + "\n", encoding="utf-8")
