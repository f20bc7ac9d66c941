"""Histogram-based selectivity estimation for SQL LIKE predicates.

Mine frequent closed positional sequence patterns from a text column, lay
them out in an equal-depth histogram, and answer LIKE-predicate selectivity
queries from the histogram alone.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .estimator import (
    EstimateResult,
    EstimatorConfig,
    MatchCase,
    encapsulated_match,
    estimate,
    exact_match,
    no_match_estimate,
    partition_match,
)
from .evaluation import (
    EvaluationError,
    EvaluationReport,
    GroupAggregate,
    QueryRecord,
    absolute_error,
    evaluate,
    relative_error,
    true_selectivity,
    write_report,
)
from .histogram import (
    Bucket,
    Histogram,
    HistogramError,
    RedundancyConfig,
    build,
    eliminate_redundant,
    find_redundant,
    information_content,
    load_catalog,
    save_catalog,
)
from .miner import (
    FormatError,
    MinedPattern,
    MinerConfig,
    MinerError,
    Mode,
    PatternSet,
    Pruning,
    brute_force_mine,
    closed_check,
    closure_extend,
    frequent_length1,
    load_patterns,
    local_frequent_items,
    mine,
    project,
    save_patterns,
)
from .patterns import (
    GAP,
    ANY_ONE,
    LikePredicate,
    PatternError,
    PositionalPattern,
    SequenceDatabase,
    canonicalize,
    database,
    first_instance_end,
    like_matches,
    parse_like,
    pattern,
    pattern_contains,
    pattern_subsumes,
    properly_contains,
    read_dataset,
    row_matches,
    striped,
)
from .synth import generate_corpus, write_corpus
from .workload import (
    WorkloadError,
    WorkloadSpec,
    gen_group1,
    gen_group2,
    gen_group3,
    load_queries,
    save_queries,
)

__all__ = [name for name in dir() if not name.startswith("_")]
