"""Workload generators: shapes, determinism, persistence."""

from __future__ import annotations

import re

import pytest

from psph.evaluation import true_selectivity
from psph.patterns import database
from psph.synth import generate_corpus
from psph.workload import (
    WorkloadError,
    WorkloadSpec,
    gen_group1,
    gen_group2,
    gen_group3,
    load_queries,
    save_queries,
)


@pytest.fixture(scope="module")
def corpus_db():
    return database(generate_corpus(300, alphabet_size=12, length_range=(18, 40), seed=3))


@pytest.fixture(scope="module")
def spec():
    return WorkloadSpec(seed=9, count=25)


class TestGroup1:
    def test_shape_and_vocabulary(self, corpus_db, spec):
        words = {w for row in corpus_db.rows for w in row.split()}
        lo, hi = spec.word_length
        for q in gen_group1(corpus_db, spec):
            assert re.fullmatch(r"%[^%]+(%[^%]+)?%", q.raw)
            pieces = q.raw.strip("%").split("%")
            assert len(pieces) in (1, 2)
            total = 0
            for piece in pieces:
                word = piece.replace("_", "")
                assert word in words
                assert lo <= len(word) <= hi
                assert piece.count("_") <= spec.underscores[1]
                total += len(word)
            assert total <= spec.max_two_word_literals

    def test_deterministic_per_seed(self, corpus_db, spec):
        a = [q.raw for q in gen_group1(corpus_db, spec)]
        b = [q.raw for q in gen_group1(corpus_db, spec)]
        assert a == b
        c = [q.raw for q in gen_group1(corpus_db, WorkloadSpec(seed=10, count=25))]
        assert a != c

    def test_groups_draw_from_independent_streams(self, corpus_db, spec):
        # generating group 2 first must not shift group 1's draws
        a = [q.raw for q in gen_group1(corpus_db, spec)]
        gen_group2(corpus_db, spec)
        assert [q.raw for q in gen_group1(corpus_db, spec)] == a

    def test_wordless_dataset_is_an_error(self, spec):
        with pytest.raises(WorkloadError):
            gen_group1(database(["AB CD", "EF"]), spec)


class TestGroup2:
    def test_shape(self, corpus_db, spec):
        lo, hi = spec.percent_signs_group2
        for q in gen_group2(corpus_db, spec):
            assert q.raw.startswith("%") and q.raw.endswith("%")
            assert lo <= q.raw.count("%") <= hi
            literals = q.raw.replace("%", "")
            assert len(literals) >= spec.min_remaining
            assert "_" not in literals

    def test_literals_form_a_row_subsequence(self, corpus_db, spec):
        rows = corpus_db.rows
        for q in gen_group2(corpus_db, spec):
            s = q.raw.replace("%", "")
            assert any(_subseq(s, row) for row in rows)

    def test_deterministic(self, corpus_db, spec):
        assert [q.raw for q in gen_group2(corpus_db, spec)] == [
            q.raw for q in gen_group2(corpus_db, spec)
        ]

    def test_short_rows_are_an_error(self, spec):
        with pytest.raises(WorkloadError):
            gen_group2(database(["ABCDE"]), spec)


class TestGroup3:
    def test_survivors_match_nothing(self, corpus_db, spec):
        for q in gen_group3(corpus_db, spec):
            assert true_selectivity(q, corpus_db) == (0, 0.0)

    def test_wildcard_budget(self, corpus_db, spec):
        lo, hi = spec.percent_signs_group3
        for q in gen_group3(corpus_db, spec):
            assert lo <= q.raw.count("%") <= hi

    def test_custom_oracle_drives_the_filter(self, corpus_db, spec):
        everything = gen_group3(corpus_db, spec, oracle=lambda p: 0)
        nothing = gen_group3(corpus_db, spec, oracle=lambda p: 1)
        assert len(everything) == spec.count
        assert nothing == []

    def test_deterministic(self, corpus_db, spec):
        assert [q.raw for q in gen_group3(corpus_db, spec)] == [
            q.raw for q in gen_group3(corpus_db, spec)
        ]


class TestQueryIO:
    def test_round_trip(self, tmp_path, corpus_db, spec):
        queries = gen_group2(corpus_db, spec)
        f = tmp_path / "g2.q"
        save_queries(2, queries, f)
        assert load_queries(f) == [(2, q.raw) for q in queries]

    def test_saved_bytes_reproducible(self, tmp_path, corpus_db, spec):
        a, b = tmp_path / "a.q", tmp_path / "b.q"
        save_queries(1, gen_group1(corpus_db, spec), a)
        save_queries(1, gen_group1(corpus_db, spec), b)
        assert a.read_bytes() == b.read_bytes()

    def test_directives_switch_groups(self, tmp_path):
        f = tmp_path / "mixed.q"
        f.write_text(
            "%AB%\n# group: 2\n%CD%\n\n# group: 3\nEF%\n# just a comment\n%GH%\n",
            encoding="utf-8",
        )
        assert load_queries(f) == [(1, "%AB%"), (2, "%CD%"), (3, "EF%"), (3, "%GH%")]

    def test_plain_strings_saved_as_is(self, tmp_path):
        f = tmp_path / "s.q"
        save_queries(1, ["%AB%", "%CD%"], f)
        assert load_queries(f) == [(1, "%AB%"), (1, "%CD%")]


def _subseq(s: str, row: str) -> bool:
    it = iter(row)
    return all(c in it for c in s)
