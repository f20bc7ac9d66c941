"""The estimation cascade against the worked four-endpoint catalog."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psph.estimator import (
    EstimatorConfig,
    MatchCase,
    encapsulated_match,
    estimate,
    exact_match,
    no_match_estimate,
    partition_match,
)
from psph.histogram import build
from psph.miner import MinerConfig, PatternSet, Mode, mine
from psph.patterns import database, parse_like, pattern


class TestWorkedCases:
    def test_exact(self, worked_catalog):
        r = estimate("AC%CB", worked_catalog)
        assert (r.selectivity, r.match_case) == (0.375, MatchCase.EXACT)
        assert r.witness == ("AC%CB",)

    def test_encapsulated(self, worked_catalog):
        r = estimate("%C%C%", worked_catalog)
        assert (r.selectivity, r.match_case) == (0.75, MatchCase.ENCAPSULATED)

    def test_partitioned(self, worked_catalog):
        r = estimate("Z%CB", worked_catalog)
        assert (r.selectivity, r.match_case) == (0.375, MatchCase.PARTITIONED)

    def test_no_match(self, worked_catalog):
        r = estimate("D%A%D%E", worked_catalog)
        assert (r.selectivity, r.match_case) == (0.025, MatchCase.NO_MATCH)
        assert r.witness == ()


class TestCascade:
    def test_pure_wildcards_match_everything(self, worked_catalog):
        for raw in ("%", "%%", "_", "%_%"):
            r = estimate(raw, worked_catalog)
            assert (r.selectivity, r.match_case) == (1.0, MatchCase.MATCH_ALL)

    def test_anchoring_does_not_change_the_lookup(self, worked_catalog):
        assert estimate("%AC%CB%", worked_catalog) == estimate("AC%CB", worked_catalog)

    def test_underscores_relax_to_gaps(self, worked_catalog):
        r = estimate("AC_CB", worked_catalog)
        # canonical form is AC%CB's sibling AC%CB only if _ collapses to %;
        # the canonicalized pattern is AC%CB exactly.
        assert (r.selectivity, r.match_case) == (0.375, MatchCase.EXACT)

    def test_exact_takes_priority_over_encapsulated(self, worked_catalog):
        # C is itself an endpoint, even though it also generalizes others.
        r = estimate("%C%", worked_catalog)
        assert (r.selectivity, r.match_case) == (1.0, MatchCase.EXACT)

    def test_parsed_predicates_accepted(self, worked_catalog):
        assert estimate(parse_like("AC%CB"), worked_catalog).match_case is MatchCase.EXACT


class TestExactAndEncapsulated:
    def test_exact_match_lookup(self, worked_catalog):
        assert exact_match(pattern("C%CB"), worked_catalog) == 6
        assert exact_match(pattern("CB"), worked_catalog) is None

    def test_encapsulated_takes_the_minimum(self, worked_catalog):
        # %C%C% generalizes A%C%CB (6) and C%CB (6) but not AC%CB (3).
        assert encapsulated_match(pattern("C%C"), worked_catalog) == 6

    def test_encapsulated_none_when_nothing_subsumed(self, worked_catalog):
        assert encapsulated_match(pattern("ZZ"), worked_catalog) is None

    def test_cb_prefix_rule(self, worked_catalog):
        # CB maps onto the CB run of C%CB and AC%CB and A%C%CB; min is 3.
        assert encapsulated_match(pattern("CB"), worked_catalog) == 3


class TestPartitioning:
    def test_partition_reports_minimum_over_cuts(self, worked_catalog):
        assert partition_match(parse_like("Z%CB"), worked_catalog, EstimatorConfig()) == 0.375

    def test_epsilon_zero_rejects_short_pieces(self, worked_catalog):
        cfg = EstimatorConfig(epsilon=0)
        assert partition_match(parse_like("Z%CB"), worked_catalog, cfg) is None
        r = estimate("Z%CB", worked_catalog, cfg)
        assert r.match_case is MatchCase.NO_MATCH

    def test_disabled_partitioning_falls_through(self, worked_catalog):
        cfg = EstimatorConfig(partitioning_enabled=False)
        r = estimate("Z%CB", worked_catalog, cfg)
        assert (r.selectivity, r.match_case) == (0.025, MatchCase.NO_MATCH)

    def test_split_pieces_canonicalize_before_counting(self, worked_catalog):
        # Splitting D%A%D%E anywhere leaves at most 2 of 4 literals per
        # piece, under the n-1 filter, so the cascade must fall through.
        r = estimate("D%A%D%E", worked_catalog)
        assert r.match_case is MatchCase.NO_MATCH


class TestFallback:
    def test_fallback_value_tracks_config(self, worked_catalog):
        assert no_match_estimate(worked_catalog, EstimatorConfig()) == 0.025
        assert no_match_estimate(worked_catalog, EstimatorConfig(t_percent=50)) == 0.125

    def test_config_validation(self):
        with pytest.raises(ValueError):
            EstimatorConfig(epsilon=-1)
        with pytest.raises(ValueError):
            EstimatorConfig(t_percent=0)


class TestLowerBound:
    @settings(max_examples=40)
    @given(
        st.lists(st.text("ABC", min_size=1, max_size=8), min_size=2, max_size=12),
        st.text("ABC%", min_size=1, max_size=6).filter(lambda s: s.strip("%")),
    )
    def test_encapsulated_never_exceeds_truth(self, rows, raw):
        """Subsumed endpoints count rows the predicate also matches."""
        db = database(rows)
        mined = mine(db, MinerConfig(minsup=2))
        if not mined:
            return
        ps = PatternSet(tuple(mined), 2, db.size, Mode.POSITIONAL)
        h = build(ps, 4)
        canonical = pattern(raw)
        freq = encapsulated_match(canonical, h)
        if freq is None:
            return
        from psph.evaluation import true_selectivity

        count, _ = true_selectivity(f"%{raw}%", db)
        assert freq <= count
