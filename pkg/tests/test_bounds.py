"""Major-player reduction and the two-case lower bound."""

import random
from fractions import Fraction

import pytest

from invbzf.bounds import (
    AEParameters,
    ae_rhs,
    best_epsilon_candidates,
    l1_bound,
    lower_bound,
    lower_bound_best,
    reduce_major_players,
)
from invbzf.games import (
    GameError,
    SimpleGame,
    WeightedGame,
    is_complete,
    pbi,
    realize,
    swings,
)
from invbzf.solver import head_distance_minimum, solve_by_enumeration
from invbzf.targets import Metric, distance, grid_sample

F = Fraction


def concentrated_target(n: int) -> tuple:
    return (F(3, 4), F(1, 4)) + (F(0),) * (n - 2)


class TestAeRhs:
    def test_showcase_value(self):
        assert ae_rhs(AEParameters(2, F(1, 18))) == F(7, 18)

    def test_k1_quarter(self):
        assert ae_rhs(AEParameters(1, F(1, 4))) == F(7, 4)

    def test_decreasing_to_zero(self):
        vals = [ae_rhs(AEParameters(2, F(1, d))) for d in (8, 16, 64, 512, 4096)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < F(1, 250)

    def test_rejects_bad_epsilon(self):
        with pytest.raises(ValueError):
            AEParameters(2, F(1, 3))
        with pytest.raises(ValueError):
            AEParameters(2, F(0))
        with pytest.raises(ValueError):
            AEParameters(0, F(1, 10))


def random_weighted_game(rng: random.Random, n: int) -> SimpleGame:
    weights = sorted((rng.randint(0, 6) for _ in range(n)), reverse=True)
    if sum(weights) == 0:
        weights = [1] * n
    quota = rng.randint(1, sum(weights))
    return realize(WeightedGame(n, quota, tuple(weights)))


class TestReduction:
    def test_dictator_fixed_point(self):
        v = realize(WeightedGame(3, 1, (1, 0, 0)))
        assert reduce_major_players(v, 1) == v

    def test_minors_become_null(self):
        rng = random.Random(12)
        checked = 0
        while checked < 50:
            v = random_weighted_game(rng, 5)
            try:
                red = reduce_major_players(v, 2)
            except GameError:
                continue
            prof = swings(red)
            assert prof.per_player[2:] == (0, 0, 0)
            checked += 1

    def test_preserves_completeness(self):
        rng = random.Random(5)
        checked = 0
        while checked < 25:
            v = random_weighted_game(rng, 5)
            try:
                red = reduce_major_players(v, 2)
            except GameError:
                continue
            assert is_complete(red)
            checked += 1

    def test_degenerate_raises(self):
        unanimity = realize(WeightedGame(4, 4, (1, 1, 1, 1)))
        with pytest.raises(GameError):
            reduce_major_players(unanimity, 2)

    def test_theorem_inequality_random_games(self):
        rng = random.Random(77)
        m1 = Metric.d1()
        checked = 0
        while checked < 200:
            n = rng.randint(3, 6)
            k = rng.randint(1, n - 1)
            v = random_weighted_game(rng, n)
            power = pbi(v).values
            tail = sum(power[k:])
            if not tail < F(1, k + 1):
                continue
            try:
                red = reduce_major_players(v, k)
            except GameError:
                continue
            if tail == 0:
                checked += 1
                continue
            lhs = distance(m1, power, pbi(red).values)
            assert lhs <= ae_rhs(AEParameters(k, tail)), (v, k)
            checked += 1


class TestLowerBound:
    def test_head_subsolve_half(self):
        assert head_distance_minimum((F(3, 4), F(1, 4))) == F(1, 2)

    def test_showcase_exact(self):
        for n in (2, 4, 6):
            beta = concentrated_target(n)
            assert lower_bound(beta, 2, F(1, 18)) == F(1, 9)

    def test_l1_breakpoints(self):
        beta = concentrated_target(4)
        assert l1_bound(beta, 2, F(1, 18)) == F(1, 9)
        # numeric scan agrees with the breakpoint minimum
        eps = F(1, 18)
        head, tail = F(1), F(0)
        xs = [eps + (1 - eps) * F(t, 4096) for t in range(4097)]
        scan = min(abs(1 - x - head) + abs(x - tail) for x in xs)
        assert abs(scan - l1_bound(beta, 2, eps)) < F(1, 10**12)

    def test_sweep_recovers_best_epsilon(self):
        bound, eps = lower_bound_best(concentrated_target(5), 2)
        assert bound == F(1, 9)
        assert eps == F(1, 18)

    def test_candidates_inside_open_interval(self):
        for eps in best_epsilon_candidates(concentrated_target(5), 2, F(1, 2)):
            assert 0 < eps < F(1, 3)

    def test_soundness_on_grid(self):
        m1 = Metric.d1()
        pts = grid_sample(4, F(1, 100), 40, seed=21)
        for tv in pts:
            opt = solve_by_enumeration(tv, "S", m1).distance
            for k in (1, 2, 3):
                bound, _eps = lower_bound_best(tv.beta, k)
                assert bound <= opt, (tv, k, bound, opt)

    def test_exact_head_hit_gives_nonpositive_slack(self):
        # (1/2, 1/2, 0): achievable exactly with 2 players, so any bound <= 0
        beta = (F(1, 2), F(1, 2), F(0))
        opt = solve_by_enumeration(beta, "S", Metric.d1()).distance
        assert opt == 0
        bound, _ = lower_bound_best(beta, 2)
        assert bound <= 0
