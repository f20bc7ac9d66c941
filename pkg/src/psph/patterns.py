"""Pattern and predicate algebra.

Everything downstream (mining, histograms, estimation) works on two kinds of
values: LIKE predicates as written by a user, and canonical positional
patterns, which are ordered literal runs separated by gap markers.  A gap
(`%`) admits zero or more characters; characters inside a run must appear
consecutively.  Mined patterns and histogram endpoints always denote
substring-anywhere matching, so canonical patterns carry no leading or
trailing gap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

GAP = "%"
ANY_ONE = "_"

# Literal characters of a pattern in order, wildcards removed.
StripedSequence = str


class PatternError(ValueError):
    """A predicate or pattern that violates the expected format."""


@dataclass(frozen=True)
class PositionalPattern:
    """Ordered literal runs; every adjacent pair of runs is gap-separated."""

    runs: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.runs:
            raise PatternError("pattern needs at least one literal run")
        for run in self.runs:
            if not run:
                raise PatternError("empty literal run")
            if GAP in run or ANY_ONE in run:
                raise PatternError(f"wildcard inside literal run: {run!r}")

    def render(self) -> str:
        """LIKE-syntax form: runs joined by `%`, no outer wildcards."""
        return GAP.join(self.runs)

    @property
    def literal_count(self) -> int:
        return sum(len(run) for run in self.runs)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LikePredicate:
    """A parsed LIKE string: one token per character of the raw text."""

    raw: str
    tokens: tuple[str, ...]
    anchored_prefix: bool
    anchored_suffix: bool


@dataclass(frozen=True)
class SequenceDatabase:
    """The ingested text column: rows may repeat."""

    rows: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def alphabet(self) -> tuple[str, ...]:
        chars: set[str] = set()
        for row in self.rows:
            chars.update(row)
        return tuple(sorted(chars))


def database(rows) -> SequenceDatabase:
    return SequenceDatabase(tuple(rows))


def read_dataset(path) -> SequenceDatabase:
    """Load a dataset file: UTF-8, one row per line, empty lines skipped."""
    text = Path(path).read_text(encoding="utf-8")
    return SequenceDatabase(tuple(line for line in text.split("\n") if line))


def parse_like(text: str) -> LikePredicate:
    if not text:
        raise PatternError("empty LIKE predicate")
    tokens = tuple(text)
    return LikePredicate(
        raw=text,
        tokens=tokens,
        anchored_prefix=tokens[0] != GAP,
        anchored_suffix=tokens[-1] != GAP,
    )


def canonicalize(p: LikePredicate) -> PositionalPattern | None:
    """Normalize a predicate into the pattern algebra.

    Each `_` is relaxed to `%`, consecutive gaps collapse, and outer gaps
    are dropped (matching is substring-anywhere).  Returns None for a
    degenerate predicate with no literal characters at all; the estimator
    treats that as match-all.
    """
    runs: list[str] = []
    current: list[str] = []
    for tok in p.tokens:
        if tok == GAP or tok == ANY_ONE:
            if current:
                runs.append("".join(current))
                current = []
        else:
            current.append(tok)
    if current:
        runs.append("".join(current))
    if not runs:
        return None
    return PositionalPattern(tuple(runs))


def pattern(like_text: str) -> PositionalPattern:
    """Parse-and-canonicalize convenience for pattern literals in code."""
    canon = canonicalize(parse_like(like_text))
    if canon is None:
        raise PatternError(f"pattern has no literal characters: {like_text!r}")
    return canon


def striped(p: PositionalPattern) -> StripedSequence:
    return "".join(p.runs)


def properly_contains(q: StripedSequence, s: StripedSequence) -> bool:
    """True iff s embeds into q as a subsequence (reflexive)."""
    it = iter(q)
    return all(c in it for c in s)


def first_instance_end(p: PositionalPattern, row: str) -> int | None:
    """End index (exclusive) of the leftmost embedding of p in row.

    Runs are placed greedily left to right; because a gap admits zero or
    more characters, greedy placement finds an embedding whenever one
    exists, and its end position is minimal.
    """
    pos = 0
    for run in p.runs:
        i = row.find(run, pos)
        if i < 0:
            return None
        pos = i + len(run)
    return pos


def row_matches(p: PositionalPattern, row: str) -> bool:
    return first_instance_end(p, row) is not None


@lru_cache(maxsize=4096)
def _like_regex(raw: str) -> re.Pattern[str]:
    parts = []
    for ch in raw:
        if ch == GAP:
            parts.append(".*")
        elif ch == ANY_ONE:
            parts.append(".")
        else:
            parts.append(re.escape(ch))
    return re.compile("".join(parts), re.DOTALL)


def like_matches(p: LikePredicate, row: str) -> bool:
    """Full SQL LIKE semantics: `%` zero-or-more, `_` exactly one, anchored.

    This is the ground-truth oracle; the estimator never calls it.
    """
    return _like_regex(p.raw).fullmatch(row) is not None


def pattern_contains(p: PositionalPattern, r: PositionalPattern) -> bool:
    """True iff r's literals form a subsequence of p's literals.

    Adjacency is ignored on purpose: this is the striped relation used by
    redundant-pattern elimination, not a matching implication.
    """
    return properly_contains(striped(p), striped(r))


def pattern_subsumes(general: PositionalPattern, specific: PositionalPattern) -> bool:
    """True iff every row matching `specific` necessarily matches `general`.

    Decided structurally: each run of `general` must map, in order, to a
    distinct run of `specific` that it prefixes.  Any such assignment
    witnesses the implication, because a row embedding `specific` places
    every one of its runs contiguously and in order.  The relation is
    deliberately conservative; estimation uses it as a sound lower-bound
    test, so false negatives are acceptable and false positives are not.
    """
    j = 0
    for run in general.runs:
        while j < len(specific.runs) and not specific.runs[j].startswith(run):
            j += 1
        if j == len(specific.runs):
            return False
        j += 1
    return True
