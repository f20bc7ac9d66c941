"""Synthetic corpus generator checks."""

from __future__ import annotations

import string

import pytest
from hypothesis import given, strategies as st

from psph.patterns import read_dataset
from psph.synth import generate_corpus, write_corpus


class TestShape:
    def test_row_count(self):
        assert len(generate_corpus(37, seed=1)) == 37

    def test_lengths_stay_in_range(self):
        rows = generate_corpus(200, alphabet_size=8, length_range=(10, 24), seed=2)
        assert all(10 <= len(r) <= 24 for r in rows)

    def test_alphabet_is_prefix_of_repertoire(self):
        # Rows draw from the first K letters (upper case first, then lower
        # case), plus the space separating words.
        rows = generate_corpus(150, alphabet_size=30, seed=3)
        allowed = set(string.ascii_uppercase + string.ascii_lowercase[:4]) | {" "}
        assert set("".join(rows)) <= allowed

    def test_small_alphabet(self):
        rows = generate_corpus(50, alphabet_size=2, length_range=(6, 12), seed=4)
        assert set("".join(rows)) <= {"A", "B", " "}

    def test_words_repeat_across_rows(self):
        # The Zipf skew should make at least one word show up in many rows.
        rows = generate_corpus(300, alphabet_size=12, length_range=(18, 40), seed=5)
        counts: dict[str, int] = {}
        for row in rows:
            for word in set(row.split()):
                counts[word] = counts.get(word, 0) + 1
        assert max(counts.values()) >= 30

    @given(st.integers(min_value=0, max_value=2**31))
    def test_deterministic_per_seed(self, seed):
        a = generate_corpus(20, alphabet_size=6, length_range=(8, 16), seed=seed)
        b = generate_corpus(20, alphabet_size=6, length_range=(8, 16), seed=seed)
        assert a == b

    def test_different_seeds_differ(self):
        a = generate_corpus(20, seed=0)
        b = generate_corpus(20, seed=1)
        assert a != b


class TestValidation:
    @pytest.mark.parametrize("n", [0, -5])
    def test_rejects_bad_row_count(self, n):
        with pytest.raises(ValueError, match="row_count"):
            generate_corpus(n)

    @pytest.mark.parametrize("k", [0, -1, 53])
    def test_rejects_bad_alphabet(self, k):
        with pytest.raises(ValueError, match="alphabet_size"):
            generate_corpus(10, alphabet_size=k)

    @pytest.mark.parametrize("rng", [(0, 10), (12, 8), (-3, 5)])
    def test_rejects_bad_length_range(self, rng):
        with pytest.raises(ValueError, match="length range"):
            generate_corpus(10, length_range=rng)


class TestRoundTrip:
    def test_write_then_read(self, tmp_path):
        rows = generate_corpus(40, alphabet_size=10, length_range=(8, 20), seed=7)
        out = tmp_path / "corpus.txt"
        write_corpus(rows, out)
        db = read_dataset(out)
        assert list(db.rows) == rows

    def test_file_is_newline_terminated(self, tmp_path):
        out = tmp_path / "corpus.txt"
        write_corpus(["AB", "CD"], out)
        assert out.read_text(encoding="utf-8") == "AB\nCD\n"
