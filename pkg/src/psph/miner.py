"""Frequent closed positional sequence pattern mining.

The search grows prefixes depth-first over first-instance projections.  Two
extension families exist per locally frequent item: a gap extension (the
item lands in a new run) and an adjacent extension (the item elongates the
last run).  When both forms of one item are frequent at the same support
the gap form is dropped in favor of the adjacent one, which carries the
extra adjacency information for free.

A grown prefix is reported iff it passes the backward-extension test: no
single character may occur, in every supporting row, inside the same
semi-maximum period (the stretch a character could occupy before or
between the runs without disturbing the embedding).  Such a character
witnesses an equal-support refinement, so the prefix adds nothing.  The
test deliberately looks backward only; a pattern with an equal-support
*forward* extension is still reported, matching how shorter prefixes keep
their own standing in the mined catalog.

``brute_force_mine`` answers the same question by exhaustive growth plus a
direct per-definition filter over the raw rows, sharing no traversal state
with ``mine``; the test suite holds the two equal over randomized inputs.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .patterns import (
    PositionalPattern,
    SequenceDatabase,
    first_instance_end,
    pattern,
    row_matches,
)


class Mode(enum.Enum):
    POSITIONAL = "POSITIONAL"
    REGULAR = "REGULAR"


class Pruning(enum.Enum):
    BACKSCAN_ON = "BACKSCAN_ON"
    BACKSCAN_OFF = "BACKSCAN_OFF"


class MinerError(ValueError):
    pass


@dataclass(frozen=True)
class MinedPattern:
    pattern: PositionalPattern
    frequency: int


@dataclass(frozen=True)
class MinerConfig:
    """minsup is an absolute row count (int) or a fraction of |D| (float)."""

    minsup: int | float
    mode: Mode = Mode.POSITIONAL
    pruning: Pruning = Pruning.BACKSCAN_ON
    max_pattern_literals: int | None = None

    def resolve_minsup(self, db_size: int) -> int:
        m = self.minsup
        if isinstance(m, bool) or m is None:
            raise MinerError(f"invalid minsup: {m!r}")
        if isinstance(m, int):
            if m <= 0:
                raise MinerError(f"minsup must be positive, got {m}")
            return m
        if not 0 < m <= 1:
            raise MinerError(f"fractional minsup must lie in (0, 1], got {m}")
        return max(1, math.ceil(m * db_size))


@dataclass(frozen=True)
class ProjectedDatabase:
    """Suffixes after the first instance of a prefix, per supporting row."""

    prefix: PositionalPattern
    rows: tuple[str, ...]
    projections: tuple[str, ...]


def project(source, prefix: PositionalPattern) -> ProjectedDatabase:
    """Project rows onto a prefix; keeps the source rows for recounting."""
    if isinstance(source, SequenceDatabase):
        rows = source.rows
    elif isinstance(source, ProjectedDatabase):
        rows = source.projections
    else:
        rows = tuple(source)
    kept = []
    suffixes = []
    for row in rows:
        end = first_instance_end(prefix, row)
        if end is not None:
            kept.append(row)
            suffixes.append(row[end:])
    return ProjectedDatabase(prefix, tuple(kept), tuple(suffixes))


def frequent_length1(db: SequenceDatabase, minsup_count: int) -> dict[str, int]:
    """Characters occurring in at least minsup_count distinct rows."""
    counts: Counter[str] = Counter()
    for row in db.rows:
        counts.update(set(row))
    return {c: n for c, n in sorted(counts.items()) if n >= minsup_count}


def local_frequent_items(
    proj: ProjectedDatabase, minsup_count: int
) -> tuple[dict[str, int], dict[str, int]]:
    """Locally frequent items of a projection, split into two groups.

    group1 counts items anywhere in the projected suffixes; the count is the
    exact support of the gap extension (leftmost instances end as early as
    possible, so the item appears after one iff some embedding precedes it).
    group2 holds items whose adjacent extension of the prefix is frequent;
    candidates come from group1 (any frequent adjacency is also gap-frequent)
    and their supports are recounted against the full source rows, because a
    later occurrence of the prefix may carry an adjacency the first instance
    hides.  The projection must therefore be taken from the source database.
    """
    counts: Counter[str] = Counter()
    for suffix in proj.projections:
        counts.update(set(suffix))
    group1 = {c: n for c, n in sorted(counts.items()) if n >= minsup_count}
    group2: dict[str, int] = {}
    last = proj.prefix.runs[-1]
    for c in group1:
        extended = PositionalPattern(proj.prefix.runs[:-1] + (last + c,))
        f = sum(1 for row in proj.rows if row_matches(extended, row))
        if f >= minsup_count:
            group2[c] = f
    return group1, group2


def closure_extend(
    prefix: PositionalPattern,
    item: str,
    gap_freq: int | None,
    adjacent_freq: int | None,
    minsup_count: int,
) -> tuple[tuple[PositionalPattern, int], ...]:
    """Extension decisions for one item.

    Equal gap and adjacent frequencies mean every gap occurrence is already
    adjacent, so only the adjacent extension is emitted; different
    frequencies keep both; an item frequent in one form only keeps that one.
    """
    gap_ok = gap_freq is not None and gap_freq >= minsup_count
    adj_ok = adjacent_freq is not None and adjacent_freq >= minsup_count
    out: list[tuple[PositionalPattern, int]] = []
    if adj_ok:
        out.append((PositionalPattern(prefix.runs[:-1] + (prefix.runs[-1] + item,)), adjacent_freq))
    if gap_ok and not (adj_ok and gap_freq == adjacent_freq):
        out.append((PositionalPattern(prefix.runs + (item,)), gap_freq))
    return tuple(out)


def _greedy_prefix_ends(runs: tuple[str, ...], row: str) -> list[int] | None:
    """ends[j] = end of the leftmost embedding of runs[:j+1]; None if absent."""
    ends = []
    pos = 0
    for run in runs:
        i = row.find(run, pos)
        if i < 0:
            return None
        pos = i + len(run)
        ends.append(pos)
    return ends


def _rightmost_starts(runs: tuple[str, ...], row: str, window_end: int) -> list[int]:
    """Latest placement of each run inside the leftmost-instance window."""
    starts = [0] * len(runs)
    limit = window_end
    for j in range(len(runs) - 1, -1, -1):
        s = row.rfind(runs[j], 0, limit)
        starts[j] = s
        limit = s
    return starts


def closed_check(candidate: MinedPattern | PositionalPattern, supporting_rows) -> bool:
    """Backward-extension test over semi-maximum periods.

    The j-th period of a row stretches from the end of the leftmost
    embedding of the first j runs to the latest feasible start of run j+1.
    A character present in the same period of every supporting row could be
    inserted there at unchanged support, so the candidate is not closed.
    """
    p = candidate.pattern if isinstance(candidate, MinedPattern) else candidate
    nruns = len(p.runs)
    common: list[set[str] | None] = [None] * nruns
    alive = set(range(nruns))
    for row in supporting_rows:
        greedy = _greedy_prefix_ends(p.runs, row)
        if greedy is None:
            raise MinerError(f"row does not support candidate {p.render()!r}")
        latest = _rightmost_starts(p.runs, row, greedy[-1])
        for j in list(alive):
            left = 0 if j == 0 else greedy[j - 1]
            items = set(row[left : latest[j]])
            prev = common[j]
            common[j] = items if prev is None else prev & items
            if not common[j]:
                alive.discard(j)
        if not alive:
            return True
    if common[0] is None:
        return True
    return not alive


def mine(db: SequenceDatabase, cfg: MinerConfig) -> list[MinedPattern]:
    """All frequent closed patterns of the configured mode, exactly counted.

    Depth-first growth; each node costs one kernel sweep over its supporting
    rows, which yields the support and embedding of every candidate child
    plus the backward-test verdict, and children inherit their row selection
    from the parent's sweep.
    """
    minsup = cfg.resolve_minsup(db.size)
    if db.size == 0 or minsup > db.size:
        return []
    flat, offsets = kernels.encode_rows(db.rows)
    alpha_chars = db.alphabet()
    if not alpha_chars:
        return []
    alpha = np.array([ord(c) for c in alpha_chars], dtype=np.int32)
    lookup = kernels.build_lookup(alpha)
    positional = cfg.mode is Mode.POSITIONAL
    prune = cfg.pruning is Pruning.BACKSCAN_ON
    cap = cfg.max_pattern_literals
    result: list[MinedPattern] = []

    def grow(p: PositionalPattern, sel: np.ndarray) -> None:
        runs_flat, run_offsets = kernels.encode_runs(p.runs)
        gap_ends, adj_ends, common = kernels.node_scan(
            flat, offsets, sel, runs_flat, run_offsets, alpha, lookup, positional
        )
        is_closed = not common.any()
        if is_closed:
            result.append(MinedPattern(p, int(sel.shape[0])))
        if cap is not None and p.literal_count >= cap:
            return
        gap_allowed = is_closed or not prune
        gap_counts = (gap_ends >= 0).sum(axis=0)
        adj_counts = (adj_ends >= 0).sum(axis=0) if positional else None
        for k in range(alpha.shape[0]):
            gap_freq = int(gap_counts[k])
            if gap_freq < minsup:
                # adjacent support never exceeds gap support for the same item
                continue
            adj_freq = int(adj_counts[k]) if positional else None
            for child, _ in closure_extend(p, alpha_chars[k], gap_freq, adj_freq, minsup):
                is_gap_child = len(child.runs) > len(p.runs)
                if is_gap_child and not gap_allowed:
                    continue
                column = gap_ends[:, k] if is_gap_child else adj_ends[:, k]
                grow(child, sel[column >= 0])

    all_rows = np.arange(db.size, dtype=np.int64)
    zero_starts = np.zeros(db.size, dtype=np.int64)
    root = kernels.scan_items(flat, offsets, all_rows, zero_starts, alpha, lookup)
    root_counts = (root >= 0).sum(axis=0)
    for k in range(alpha.shape[0]):
        if int(root_counts[k]) >= minsup:
            grow(PositionalPattern((alpha_chars[k],)), all_rows[root[:, k] >= 0])
    result.sort(key=lambda m: m.pattern.render())
    return result


# --- reference miner ---------------------------------------------------------
#
# Same answer, different road: enumerate every frequent pattern by literal
# growth with supports counted one row_matches scan at a time, then apply the
# reporting definition directly.  No projections, no pruning, no shared
# traversal state with mine().

_BF_DEFAULT_CAP = 10


def _bf_period(runs: tuple[str, ...], j: int, row: str) -> str:
    pos = 0
    for run in runs[:j]:
        pos = row.find(run, pos) + len(run)
    left = pos
    window = first_instance_end(PositionalPattern(runs), row)
    limit = window
    start_j = 0
    for r in range(len(runs) - 1, j - 1, -1):
        starts = [
            s
            for s in range(limit - len(runs[r]) + 1)
            if row.startswith(runs[r], s)
        ]
        start_j = starts[-1]
        limit = start_j
    return row[left:start_j]


def _bf_reported(runs: tuple[str, ...], rows, positional: bool, support) -> bool:
    p = PositionalPattern(runs)
    sup_rows = [row for row in rows if row_matches(p, row)]
    for j in range(len(runs)):
        common: set[str] | None = None
        for row in sup_rows:
            items = set(_bf_period(runs, j, row))
            common = items if common is None else common & items
            if not common:
                break
        if common:
            return False
    if positional:
        for j in range(1, len(runs)):
            pre = runs[:j]
            c = runs[j][0]
            if support(pre + (c,)) == support(pre[:-1] + (pre[-1] + c,)):
                return False
    return True


def brute_force_mine(
    db: SequenceDatabase, cfg: MinerConfig, budget: int = 200_000
) -> list[MinedPattern]:
    """Reference answer for small inputs; resource-guarded enumeration."""
    minsup = cfg.resolve_minsup(db.size)
    if db.size == 0 or minsup > db.size:
        return []
    rows = db.rows
    alphabet = db.alphabet()
    if len(alphabet) > 16:
        raise MinerError(f"alphabet of {len(alphabet)} exceeds the reference-miner guard")
    cap = cfg.max_pattern_literals if cfg.max_pattern_literals is not None else _BF_DEFAULT_CAP
    positional = cfg.mode is Mode.POSITIONAL

    def support(runs: tuple[str, ...]) -> int:
        q = PositionalPattern(runs)
        return sum(1 for row in rows if row_matches(q, row))

    frequent: dict[tuple[str, ...], int] = {}
    frontier: list[tuple[str, ...]] = []
    visited = 0
    for c in alphabet:
        f = support((c,))
        if f >= minsup:
            frequent[(c,)] = f
            frontier.append((c,))
    while frontier:
        grown: list[tuple[str, ...]] = []
        for runs in frontier:
            if sum(len(r) for r in runs) >= cap:
                continue
            for c in alphabet:
                children = [runs + (c,)]
                if positional:
                    children.append(runs[:-1] + (runs[-1] + c,))
                for child in children:
                    visited += 1
                    if visited > budget:
                        raise MinerError("reference-miner enumeration budget exceeded")
                    f = support(child)
                    if f >= minsup:
                        frequent[child] = f
                        grown.append(child)
        frontier = grown
    out = [
        MinedPattern(PositionalPattern(runs), f)
        for runs, f in frequent.items()
        if _bf_reported(runs, rows, positional, support)
    ]
    out.sort(key=lambda m: m.pattern.render())
    return out


# --- pattern-set files -------------------------------------------------------

PATTERNS_MAGIC = "PSPH-PATTERNS v1"


@dataclass(frozen=True)
class PatternSet:
    patterns: tuple[MinedPattern, ...]
    minsup_count: int
    db_size: int
    mode: Mode


class FormatError(ValueError):
    pass


def save_patterns(ps: PatternSet, destination) -> None:
    lines = [
        PATTERNS_MAGIC,
        f"minsup_count={ps.minsup_count}",
        f"db_size={ps.db_size}",
        f"mode={ps.mode.value}",
    ]
    for m in ps.patterns:
        lines.append(f"{m.pattern.render()}\t{m.frequency}")
    Path(destination).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_patterns(source) -> PatternSet:
    lines = Path(source).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != PATTERNS_MAGIC:
        raise FormatError(f"{source}: unsupported version (expected {PATTERNS_MAGIC!r})")
    header: dict[str, str] = {}
    body_at = 1
    for i, line in enumerate(lines[1:4], start=2):
        if "=" not in line:
            raise FormatError(f"{source}:{i}: expected key=value header, got {line!r}")
        key, _, value = line.partition("=")
        header[key] = value
        body_at = i
    for key in ("minsup_count", "db_size", "mode"):
        if key not in header:
            raise FormatError(f"{source}: missing header {key}")
    try:
        mode = Mode(header["mode"])
    except ValueError:
        raise FormatError(f"{source}: unknown mode {header['mode']!r}") from None
    patterns = []
    for i, line in enumerate(lines[body_at:], start=body_at + 1):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise FormatError(f"{source}:{i}: expected <pattern>\\t<frequency>, got {line!r}")
        patterns.append(MinedPattern(pattern(fields[0]), int(fields[1])))
    return PatternSet(
        patterns=tuple(patterns),
        minsup_count=int(header["minsup_count"]),
        db_size=int(header["db_size"]),
        mode=mode,
    )
