"""Equal-depth histograms over mined pattern sets.

Surviving patterns are laid out in code-point order of their LIKE-syntax
rendering and a running frequency sum selects bucket endpoints whenever it
crosses the next capacity boundary.  Before layout, redundant patterns can
be eliminated: a pattern whose striped form is contained in that of a
nearly-as-rare pattern carries almost no extra information and only wastes
a bucket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .miner import FormatError, MinedPattern, PatternSet
from .patterns import PositionalPattern, pattern, properly_contains, striped


class HistogramError(ValueError):
    pass


def information_content(freq: int, db_size: int) -> float:
    """-ln(freq / db_size): the rarer the pattern, the more it tells us."""
    if db_size <= 0:
        raise ValueError(f"db_size must be positive, got {db_size}")
    if not 1 <= freq <= db_size:
        raise ValueError(f"freq must lie in [1, {db_size}], got {freq}")
    return -math.log(freq / db_size)


@dataclass(frozen=True)
class RedundancyConfig:
    delta: float = 0.00216
    enabled: bool = True

    def __post_init__(self):
        if not math.isfinite(self.delta) or self.delta < 0:
            raise HistogramError(f"delta must be a non-negative magnitude, got {self.delta}")


def _charmask(s: str) -> int:
    m = 0
    for c in s:
        m |= 1 << (ord(c) & 63)
    return m


def find_redundant(
    patterns, db_size: int, cfg: RedundancyConfig | None = None
) -> list[tuple[MinedPattern, MinedPattern]]:
    """(removed, witness) pairs under the information-content rule.

    P is redundant when some other pattern R of the original set satisfies
    pattern_contains(R, P) with IC(R) - IC(P) < delta.  Witness search never
    consults earlier removal decisions, so the outcome is independent of
    input order and removals cannot cascade.  Of the eligible witnesses the
    one with the smallest IC margin wins, render order breaking ties.
    """
    cfg = cfg or RedundancyConfig()
    pats = list(patterns)
    if not pats:
        return []
    # The margin ln(freq(P)) - ln(freq(R)) shrinks as the witness frequency
    # grows, so candidates scanned by descending frequency (render breaking
    # ties) yield the smallest-margin witness at the first qualifying hit.
    order = sorted(pats, key=lambda m: (-m.frequency, m.pattern.render()))
    stripes = [striped(m.pattern) for m in order]
    freqs = np.array([m.frequency for m in order], dtype=np.float64)
    lens = np.array([len(s) for s in stripes], dtype=np.int64)
    masks = np.array([_charmask(s) for s in stripes], dtype=np.uint64)
    shrink = math.exp(-cfg.delta)
    out: list[tuple[MinedPattern, MinedPattern]] = []
    for p in pats:
        ic_p = information_content(p.frequency, db_size)
        sp = striped(p.pattern)
        # IC(R) - IC(P) < delta pins freq(R) above freq(P) * e^-delta, and
        # containment needs every literal of P present in R, so a frequency
        # cutoff plus a folded character bitmask and a length bound reject
        # most pairs without running the subsequence test.
        needed = np.uint64(_charmask(sp))
        viable = (
            (freqs > p.frequency * shrink * (1.0 - 1e-12))
            & (lens >= len(sp))
            & ((~masks & needed) == 0)
        )
        for i in np.nonzero(viable)[0]:
            r = order[i]
            if r.pattern == p.pattern or not properly_contains(stripes[i], sp):
                continue
            if information_content(r.frequency, db_size) - ic_p < cfg.delta:
                out.append((p, r))
                break
    return out


def eliminate_redundant(
    patterns, db_size: int, cfg: RedundancyConfig | None = None
) -> list[MinedPattern]:
    cfg = cfg or RedundancyConfig()
    pats = list(patterns)
    if not cfg.enabled:
        return pats
    removed = {p.pattern for p, _ in find_redundant(pats, db_size, cfg)}
    return [m for m in pats if m.pattern not in removed]


@dataclass(frozen=True)
class Bucket:
    endpoint_number: int
    endpoint_value: PositionalPattern
    endpoint_frequency: int


@dataclass(frozen=True)
class Histogram:
    buckets: tuple[Bucket, ...]
    db_size: int
    minsup_count: int
    bucket_count_requested: int
    t_percent: float

    def endpoint_frequency(self, p: PositionalPattern) -> int | None:
        for b in self.buckets:
            if b.endpoint_value == p:
                return b.endpoint_frequency
        return None


def build(
    ps: PatternSet,
    bucket_count: int,
    t_percent: float = 10.0,
    redundancy: RedundancyConfig | None = None,
) -> Histogram:
    """Equal-depth endpoint selection over the (possibly pruned) pattern set.

    With capacity C = total frequency / bucket_count, a pattern whose running
    sum S first reaches n*C becomes an endpoint carrying S, and n jumps to
    floor(S/C) + 1.  The final pattern closes the last bucket no matter where
    its sum lands, so the bucket list always covers the whole set.
    """
    if bucket_count < 1:
        raise HistogramError(f"bucket_count must be >= 1, got {bucket_count}")
    if not 0 < t_percent <= 100:
        raise HistogramError(f"t_percent must lie in (0, 100], got {t_percent}")
    survivors = eliminate_redundant(ps.patterns, ps.db_size, redundancy)
    if not survivors:
        raise HistogramError("cannot build a histogram from an empty pattern set")
    ordered = sorted(survivors, key=lambda m: m.pattern.render())
    total = sum(m.frequency for m in ordered)
    capacity = total / bucket_count
    buckets: list[Bucket] = []
    s = 0
    n = 1
    for m in ordered[:-1]:
        s += m.frequency
        if s >= n * capacity:
            buckets.append(Bucket(s, m.pattern, m.frequency))
            n = math.floor(s / capacity) + 1
    last = ordered[-1]
    buckets.append(Bucket(total, last.pattern, last.frequency))
    return Histogram(
        buckets=tuple(buckets),
        db_size=ps.db_size,
        minsup_count=ps.minsup_count,
        bucket_count_requested=bucket_count,
        t_percent=t_percent,
    )


CATALOG_MAGIC = "PSPH-HISTOGRAM v1"


def save_catalog(h: Histogram, destination) -> None:
    lines = [
        CATALOG_MAGIC,
        f"db_size={h.db_size}",
        f"minsup_count={h.minsup_count}",
        f"t_percent={h.t_percent!r}",
        f"buckets={h.bucket_count_requested}",
    ]
    for b in h.buckets:
        lines.append(f"{b.endpoint_number}\t{b.endpoint_value.render()}\t{b.endpoint_frequency}")
    Path(destination).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_catalog(source) -> Histogram:
    lines = Path(source).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CATALOG_MAGIC:
        raise FormatError(f"{source}: unsupported version (expected {CATALOG_MAGIC!r})")
    header: dict[str, str] = {}
    for i, line in enumerate(lines[1:5], start=2):
        if "=" not in line:
            raise FormatError(f"{source}:{i}: expected key=value header, got {line!r}")
        key, _, value = line.partition("=")
        header[key] = value
    for key in ("db_size", "minsup_count", "t_percent", "buckets"):
        if key not in header:
            raise FormatError(f"{source}: missing header {key}")
    buckets: list[Bucket] = []
    prev = 0
    for i, line in enumerate(lines[5:], start=6):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise FormatError(
                f"{source}:{i}: expected <number>\\t<pattern>\\t<frequency>, got {line!r}"
            )
        try:
            number = int(fields[0])
            freq = int(fields[2])
        except ValueError:
            raise FormatError(f"{source}:{i}: non-integer endpoint field in {line!r}") from None
        if number <= prev:
            raise FormatError(f"{source}:{i}: endpoint numbers must strictly increase")
        prev = number
        buckets.append(Bucket(number, pattern(fields[1]), freq))
    try:
        return Histogram(
            buckets=tuple(buckets),
            db_size=int(header["db_size"]),
            minsup_count=int(header["minsup_count"]),
            bucket_count_requested=int(header["buckets"]),
            t_percent=float(header["t_percent"]),
        )
    except ValueError as exc:
        raise FormatError(f"{source}: bad header value ({exc})") from None
