"""Hill climbing and the stop-rule quantile table."""

from fractions import Fraction

import pytest

from invbzf.family import family_target
from invbzf.games import WeightedGame, pbi, realize, swings_weighted
from invbzf.local_search import SearchConfig, hill_climb, swing_counts, termination_quantiles
from invbzf.solver import HEURISTIC_ONLY, solve_by_enumeration
from invbzf.targets import Metric, TargetVector, distance, grid_sample

F = Fraction
D1 = Metric.d1()


class TestSwingCountsDP:
    def test_matches_exact_reference(self):
        cases = [
            (9, (3, 3, 3, 2, 1)),
            (4, (3, 3, 3, 2, 1)),
            (14, (6, 5, 5, 5, 5, 5, 5, 5, 4, 4)),
            (5, (1, 1, 1, 1, 1, 0)),
            (1, (1,)),
        ]
        for q, w in cases:
            assert swing_counts(q, w) == swings_weighted(
                WeightedGame(len(w), q, tuple(w))
            ).per_player


class TestHillClimb:
    def test_exact_hit_one_restart(self):
        res = hill_climb(TargetVector((F(1, 3),) * 3), D1, SearchConfig(restarts=1, seed=1))
        assert res.distance == 0
        assert res.status == HEURISTIC_ONLY

    def test_reported_distance_is_realized(self):
        for seed in (0, 5):
            tv = grid_sample(5, F(1, 100), 1, seed=seed)[0]
            res = hill_climb(tv, D1, SearchConfig(restarts=4, seed=seed))
            game = realize(res.witness_weights)
            assert distance(D1, pbi(game).values, tv.beta) == res.distance

    def test_reproducible(self):
        tv = grid_sample(6, F(1, 100), 1, seed=8)[0]
        cfg = SearchConfig(restarts=6, seed=42)
        a = hill_climb(tv, D1, cfg)
        b = hill_climb(tv, D1, cfg)
        assert a.distance == b.distance
        assert a.witness_weights == b.witness_weights

    def test_never_beats_enumerated_optimum(self):
        pts = grid_sample(5, F(1, 100), 25, seed=17)
        hits = 0
        for tv in pts:
            opt = solve_by_enumeration(tv, "W", D1).distance
            res = hill_climb(tv, D1, SearchConfig(restarts=20, seed=3))
            assert res.distance >= opt
            hits += res.distance == opt
        # soft target only; the hard guarantee is the upper-bound property
        assert hits >= 1

    def test_stop_threshold(self):
        tv = TargetVector((F(1, 2), F(1, 2)))
        res = hill_climb(tv, D1, SearchConfig(restarts=3, seed=0, stop_threshold=F(1)))
        assert res.distance <= 1

    def test_family_n10_upper_bounds(self):
        res = hill_climb(family_target(10), D1, SearchConfig(restarts=40, seed=0))
        optimum = F(225, 3686)  # best weighted game, found by exhaustive scan
        assert res.distance >= optimum
        assert res.distance <= F(2, 19)  # never worse than the quota heuristics

    @pytest.mark.xfail(
        reason="strict steepest descent cannot cross the family target's"
        " same-distance plateaus; see the decisions ledger (0 hits in >1000"
        " restarts across initializations)",
        strict=False,
    )
    def test_family_n10_reaches_published_value(self):
        res = hill_climb(family_target(10), D1, SearchConfig(restarts=60, seed=0))
        assert float(res.distance) <= 0.061042 + 1e-9


class TestTerminationQuantiles:
    def test_n4_d1(self):
        row = termination_quantiles(4, "d1")
        assert row["median"] == pytest.approx(0.1600, abs=1e-9)
        assert row["average"] == pytest.approx(0.1622, abs=1e-9)
        assert not row["sampled"]

    def test_n11_d1(self):
        row = termination_quantiles(11, "d1")
        assert row["median"] == pytest.approx(0.0064, abs=1e-9)
        assert row["q01"] == pytest.approx(0.0031, abs=1e-9)
        assert row["sampled"]

    def test_n2_one_percent_zero(self):
        assert termination_quantiles(2, "d1")["q01"] == 0.0

    def test_missing_row(self):
        with pytest.raises(KeyError):
            termination_quantiles(30, "d1")
        with pytest.raises(KeyError):
            termination_quantiles(4, "d1w")
