"""Deterministic synthetic text corpus with Zipf-skewed word reuse.

Rows are space-joined words drawn from a fixed pool, the pool index picked
with probability proportional to 1/rank.  Heavy reuse of the top words
plants patterns that stay frequent at one-to-two-percent support, the
regime the estimator is tuned for, while the uniform letters inside each
word keep accidental cross-word patterns rare.
"""

from __future__ import annotations

import random
from pathlib import Path

_POOL_SIZE = 160
_WORD_LENGTH = (4, 9)
_REPERTOIRE = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"


def generate_corpus(
    row_count: int,
    alphabet_size: int = 26,
    length_range: tuple[int, int] = (18, 60),
    seed: int = 0,
) -> list[str]:
    if row_count <= 0:
        raise ValueError(f"row_count must be positive, got {row_count}")
    if not 1 <= alphabet_size <= len(_REPERTOIRE):
        raise ValueError(
            f"alphabet_size must lie in [1, {len(_REPERTOIRE)}], got {alphabet_size}"
        )
    lo, hi = length_range
    if not 0 < lo <= hi:
        raise ValueError(f"bad length range {length_range}")
    rng = random.Random(f"{seed}:synth")
    letters = list(_REPERTOIRE[:alphabet_size])
    pool = [
        "".join(rng.choice(letters) for _ in range(rng.randint(*_WORD_LENGTH)))
        for _ in range(_POOL_SIZE)
    ]
    ranks = list(range(_POOL_SIZE))
    weights = [1.0 / (r + 1) for r in ranks]
    rows = []
    for _ in range(row_count):
        words: list[str] = []
        while len(" ".join(words)) < lo:
            words.append(pool[rng.choices(ranks, weights=weights, k=1)[0]])
        row = " ".join(words)
        if len(row) > hi:
            row = row[:hi]
            if row.endswith(" "):
                row = row[:-1] + rng.choice(letters)
        rows.append(row)
    return rows


def write_corpus(rows, destination) -> None:
    Path(destination).write_text("\n".join(rows) + "\n", encoding="utf-8")
