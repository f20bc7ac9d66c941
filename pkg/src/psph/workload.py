"""Seeded query-workload generation in three groups.

Group 1 lifts one or two whole words out of the dataset and blurs them with
a few single-character wildcards.  Group 2 shreds a row by deleting most of
it and scattering gap wildcards through what remains, giving hard but still
satisfiable queries.  Group 3 uses the group-2 construction with fewer
wildcards and keeps only candidates no row satisfies, giving true
negatives.  Each group draws from its own deterministic stream, so a fixed
seed fixes every byte of the output.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path

from .patterns import GAP, LikePredicate, SequenceDatabase, like_matches, parse_like


class WorkloadError(ValueError):
    pass


_MAX_REDRAWS = 10_000


@dataclass(frozen=True)
class WorkloadSpec:
    seed: int = 0
    count: int = 100
    word_length: tuple[int, int] = (5, 12)
    underscores: tuple[int, int] = (0, 2)
    min_removals: int = 3
    min_remaining: int = 3
    percent_signs_group2: tuple[int, int] = (2, 8)
    percent_signs_group3: tuple[int, int] = (1, 3)
    max_two_word_literals: int = 17

    def rng(self, group: int) -> random.Random:
        return random.Random(f"{self.seed}:group{group}")


def gen_group1(db: SequenceDatabase, spec: WorkloadSpec) -> list[LikePredicate]:
    """Positive word queries: %w% or %w1%w2% with 0-2 inserted underscores."""
    lo, hi = spec.word_length
    words = [w for row in db.rows for w in row.split() if lo <= len(w) <= hi]
    if not words:
        raise WorkloadError(f"no words of length {lo}..{hi} in the dataset")
    rng = spec.rng(1)
    out = []
    for _ in range(spec.count):
        for _ in range(_MAX_REDRAWS):
            chosen = [rng.choice(words) for _ in range(1 + (rng.random() < 0.5))]
            if sum(len(w) for w in chosen) <= spec.max_two_word_literals:
                break
        else:
            raise WorkloadError("could not draw words under the length cap")
        blurred = []
        for w in chosen:
            chars = list(w)
            for _ in range(rng.randint(*spec.underscores)):
                chars.insert(rng.randint(0, len(chars)), "_")
            blurred.append("".join(chars))
        out.append(parse_like(GAP + GAP.join(blurred) + GAP))
    return out


def _shredded(row: str, rng: random.Random, spec: WorkloadSpec) -> str:
    """Delete 3..len(row) characters, redrawing until >= min_remaining survive."""
    k = rng.randint(spec.min_removals, len(row))
    if len(row) - k < spec.min_remaining:
        return ""
    dropped = set(rng.sample(range(len(row)), k))
    return "".join(c for i, c in enumerate(row) if i not in dropped)


def gen_group2(db: SequenceDatabase, spec: WorkloadSpec) -> list[LikePredicate]:
    """Hard positive queries: %s1%s2%...%sn% shredded out of real rows."""
    eligible = [r for r in db.rows if len(r) >= spec.min_removals + spec.min_remaining]
    if not eligible:
        raise WorkloadError("no rows long enough to shred")
    rng = spec.rng(2)
    out = []
    for _ in range(spec.count):
        for _ in range(_MAX_REDRAWS):
            kept = _shredded(rng.choice(eligible), rng, spec)
            if kept:
                break
        else:
            raise WorkloadError("could not shred a row under the remaining-length floor")
        chars = list(kept)
        signs = rng.randint(*spec.percent_signs_group2)
        for _ in range(signs - 2):
            chars.insert(rng.randint(0, len(chars)), GAP)
        out.append(parse_like(GAP + "".join(chars) + GAP))
    return out


def gen_group3(db: SequenceDatabase, spec: WorkloadSpec, oracle=None) -> list[LikePredicate]:
    """Negative queries: group-2 shredding, 1-3 wildcards, zero-match filter.

    With fewer wildcards the fragments must sit adjacent (and possibly
    anchored), which is what makes misses likely; the oracle scan keeps only
    candidates no row satisfies, so far fewer than spec.count survive.
    """
    if oracle is None:
        def oracle(p: LikePredicate) -> int:
            return sum(1 for row in db.rows if like_matches(p, row))

    eligible = [r for r in db.rows if len(r) >= spec.min_removals + spec.min_remaining]
    if not eligible:
        raise WorkloadError("no rows long enough to shred")
    rng = spec.rng(3)
    out = []
    for _ in range(spec.count):
        for _ in range(_MAX_REDRAWS):
            kept = _shredded(rng.choice(eligible), rng, spec)
            if kept:
                break
        else:
            raise WorkloadError("could not shred a row under the remaining-length floor")
        chars = list(kept)
        for _ in range(rng.randint(*spec.percent_signs_group3)):
            chars.insert(rng.randint(0, len(chars)), GAP)
        candidate = parse_like("".join(chars))
        if oracle(candidate) == 0:
            out.append(candidate)
    return out


_GROUP_DIRECTIVE = re.compile(r"#\s*group:\s*(\d+)\s*$")


def save_queries(group: int, queries, destination) -> None:
    lines = [f"# group: {group}"]
    for q in queries:
        lines.append(q.raw if isinstance(q, LikePredicate) else str(q))
    Path(destination).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_queries(source) -> list[tuple[int, str]]:
    """(group, raw LIKE text) pairs; `# group: N` lines switch the group."""
    group = 1
    out: list[tuple[int, str]] = []
    for line in Path(source).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        if line.lstrip().startswith("#"):
            m = _GROUP_DIRECTIVE.match(line.strip())
            if m:
                group = int(m.group(1))
            continue
        out.append((group, line))
    return out
