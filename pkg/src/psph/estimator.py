"""Selectivity estimation over a pattern histogram.

The cascade tries the cheapest, most precise evidence first: an endpoint
equal to the canonicalized predicate, then endpoints the predicate
generalizes (encapsulated), then endpoints matching a long-enough piece of
the predicate (partitioned), and finally a fixed fallback keyed to the
mining threshold.  The estimator reads nothing but the catalog; the raw
rows never participate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .histogram import Histogram
from .patterns import (
    LikePredicate,
    PositionalPattern,
    canonicalize,
    parse_like,
    pattern_subsumes,
)


class MatchCase(enum.Enum):
    EXACT = "EXACT"
    ENCAPSULATED = "ENCAPSULATED"
    PARTITIONED = "PARTITIONED"
    NO_MATCH = "NO_MATCH"
    MATCH_ALL = "MATCH_ALL"


@dataclass(frozen=True)
class EstimatorConfig:
    epsilon: int = 1
    t_percent: float = 10.0
    partitioning_enabled: bool = True

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not 0 < self.t_percent <= 100:
            raise ValueError(f"t_percent must lie in (0, 100], got {self.t_percent}")


@dataclass(frozen=True)
class EstimateResult:
    selectivity: float
    match_case: MatchCase
    witness: tuple[str, ...]


@lru_cache(maxsize=32)
def _endpoint_index(h: Histogram) -> dict[PositionalPattern, int]:
    # Partitioning probes the catalog once per split position, so exact
    # lookups run off a dictionary instead of the bucket list.
    return {b.endpoint_value: b.endpoint_frequency for b in h.buckets}


def exact_match(p_canonical: PositionalPattern, h: Histogram) -> int | None:
    return _endpoint_index(h).get(p_canonical)


def _encapsulated(p_canonical: PositionalPattern, h: Histogram) -> tuple[int, str] | None:
    best: tuple[int, str] | None = None
    for b in h.buckets:
        if pattern_subsumes(p_canonical, b.endpoint_value):
            if best is None or b.endpoint_frequency < best[0]:
                best = (b.endpoint_frequency, b.endpoint_value.render())
    return best


def encapsulated_match(p_canonical: PositionalPattern, h: Histogram) -> int | None:
    """Minimum frequency over the endpoints the predicate generalizes.

    Every row counted under such an endpoint also satisfies the predicate,
    so the returned frequency never exceeds the predicate's true count on
    the database the histogram was built from.
    """
    hit = _encapsulated(p_canonical, h)
    return None if hit is None else hit[0]


def _partition(p: LikePredicate, h: Histogram, cfg: EstimatorConfig) -> tuple[int, str] | None:
    canonical = canonicalize(p)
    if canonical is None:
        return None
    needed = canonical.literal_count - cfg.epsilon
    best: tuple[int, str] | None = None
    for i in range(1, len(p.raw)):
        for piece in (p.raw[:i], p.raw[i:]):
            part = canonicalize(parse_like(piece))
            if part is None or part.literal_count < needed:
                continue
            freq = exact_match(part, h)
            via = part.render()
            if freq is None:
                hit = _encapsulated(part, h)
                if hit is None:
                    continue
                freq = hit[0]
                via = f"{part.render()}~{hit[1]}"
            if best is None or freq < best[0]:
                best = (freq, f"{piece}->{via}")
    return best


def partition_match(p: LikePredicate, h: Histogram, cfg: EstimatorConfig) -> float | None:
    """Slide a cut point across the predicate; keep the best matched piece.

    Both sides of every cut are candidates.  A piece survives only when its
    canonical literal count reaches n - epsilon (n counting the whole
    predicate's literals), so near-full fragments decide the estimate and
    tiny ones cannot drag it down.  Any row satisfying the predicate
    satisfies each piece, which is what makes the minimum a sound proxy.
    """
    hit = _partition(p, h, cfg)
    return None if hit is None else hit[0] / h.db_size


def no_match_estimate(h: Histogram, cfg: EstimatorConfig) -> float:
    return (cfg.t_percent / 100.0) * h.minsup_count / h.db_size


def estimate(
    p: LikePredicate | str, h: Histogram, cfg: EstimatorConfig | None = None
) -> EstimateResult:
    cfg = cfg or EstimatorConfig()
    if isinstance(p, str):
        p = parse_like(p)
    if h.db_size <= 0:
        raise ValueError("histogram carries no database rows")
    canonical = canonicalize(p)
    if canonical is None:
        return EstimateResult(1.0, MatchCase.MATCH_ALL, ())
    freq = exact_match(canonical, h)
    if freq is not None:
        return EstimateResult(freq / h.db_size, MatchCase.EXACT, (canonical.render(),))
    hit = _encapsulated(canonical, h)
    if hit is not None:
        return EstimateResult(hit[0] / h.db_size, MatchCase.ENCAPSULATED, (hit[1],))
    if cfg.partitioning_enabled:
        part = _partition(p, h, cfg)
        if part is not None:
            return EstimateResult(part[0] / h.db_size, MatchCase.PARTITIONED, (part[1],))
    return EstimateResult(no_match_estimate(h, cfg), MatchCase.NO_MATCH, ())
