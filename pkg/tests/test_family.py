"""Closed forms of the analytic family against brute-force computation."""

from fractions import Fraction

import pytest

from invbzf.family import (
    INTERVAL_NULL,
    INTERVAL_UNIFORM,
    VnGame,
    a_for_d1,
    a_for_dinf,
    b_bound,
    family_game,
    family_heuristic_distances,
    family_pbi,
    family_target,
    table8_deviation,
    vn_swings,
)
from invbzf.games import pbi, pbi_weighted, realize, swings, swings_weighted
from invbzf.targets import Metric, distance

F = Fraction


class TestFamilyPbi:
    def test_null_interval_n5(self):
        assert family_pbi(5, INTERVAL_NULL).values == (F(1, 4),) * 4 + (F(0),)

    def test_uniform_interval_n5(self):
        assert family_pbi(5, INTERVAL_UNIFORM).values == (F(1, 5),) * 5

    def test_matches_brute_force(self):
        for n in range(2, 9):
            for j in range(1, n):
                g = realize(family_game(n, INTERVAL_NULL, j))
                assert pbi(g).values == family_pbi(n, INTERVAL_NULL).values, (n, j)
            for j in range(0, n):
                g = realize(family_game(n, INTERVAL_UNIFORM, j))
                assert pbi(g).values == family_pbi(n, INTERVAL_UNIFORM).values, (n, j)

    def test_distance_formulas(self):
        for n in range(2, 17):
            beta = family_target(n)
            dists = family_heuristic_distances(n)
            for kind, metric in (("d1", Metric.d1()), ("dinf", Metric.dinf())):
                for interval in (INTERVAL_NULL, INTERVAL_UNIFORM):
                    got = distance(metric, family_pbi(n, interval).values, beta.beta)
                    assert got == dists[(interval, kind)], (n, interval, kind)

    def test_table_values_n5(self):
        d = family_heuristic_distances(5)
        assert d[(INTERVAL_UNIFORM, "d1")] == F(8, 45)
        assert d[(INTERVAL_UNIFORM, "dinf")] == F(4, 45)


class TestVnGame:
    def test_swing_lemma_n5(self):
        assert vn_swings(5, 3).per_player == (5, 5, 5, 3, 3)
        g = VnGame(5, 3).weighted
        assert swings(realize(g)).per_player == (5, 5, 5, 3, 3)

    def test_swing_lemma_n8(self):
        prof = vn_swings(8, 6)
        assert prof.per_player == (8,) * 6 + (6, 6)
        assert swings_weighted(VnGame(8, 6).weighted) == prof

    def test_lemma_brute_force_range(self):
        for n in range(8, 17):
            for a in range(1, n - 1):
                assert swings_weighted(VnGame(n, a).weighted) == vn_swings(n, a), (n, a)

    def test_total_swings_7k_family(self):
        for k in (1, 2, 3):
            n = 7 * k
            a = 6 * k - 1
            assert vn_swings(n, a).total == 56 * k * k - 11 * k

    def test_invalid_a(self):
        with pytest.raises(ValueError):
            VnGame(5, 4)


class TestTable8:
    def test_a_for_d1_values(self):
        assert a_for_d1(8) == 6
        assert a_for_d1(14) == 11
        assert [a_for_d1(n) for n in range(8, 15)] == [6, 7, 8, 8, 9, 10, 11]

    def test_total_n8(self):
        assert table8_deviation(8)[3] == F(1, 15)

    def test_total_case0(self):
        k = 2  # n = 14
        assert table8_deviation(14)[3] == F(2 * (28 * k - 3), (14 * k - 1) * (56 * k - 11))

    def test_matches_brute_force_three_cycles(self):
        m1 = Metric.d1()
        for n in range(8, 22):
            a = a_for_d1(n)
            dev3, dev2, dev1, total = table8_deviation(n)
            power = pbi_weighted(VnGame(n, a).weighted).values
            beta = family_target(n).beta
            assert distance(m1, power, beta) == total, n
            assert power[0] - beta[0] == dev3, n
            assert power[a] - beta[a] == dev2, n
            assert power[-1] - beta[-1] == dev1, n

    def test_asymptotic_half(self):
        total = table8_deviation(70)[3]
        assert abs(70 * total - F(1, 2)) < F(5, 100)

    def test_relative_error_limit(self):
        heur = family_heuristic_distances(70)[(INTERVAL_UNIFORM, "d1")]
        assert abs(heur / table8_deviation(70)[3] - 2) < F(1, 10)


class TestMaxMetricBound:
    def test_values(self):
        assert b_bound(8) == F(4, 255)
        assert b_bound(9) == F(63, 4437)
        assert float(b_bound(8)) == pytest.approx(0.015686, abs=1e-6)
        assert float(b_bound(9)) == pytest.approx(0.014199, abs=1e-6)
        assert float(b_bound(10)) == pytest.approx(0.008772, abs=1e-6)

    def test_a_for_dinf(self):
        assert a_for_dinf(8) == 4
        assert a_for_dinf(9) == 5
        assert a_for_dinf(10) == 5

    def test_bound_holds_brute_force(self):
        minf = Metric.dinf()
        for n in range(8, 15):
            a = a_for_dinf(n)
            power = pbi_weighted(VnGame(n, a).weighted).values
            got = distance(minf, power, family_target(n).beta)
            assert got <= b_bound(n), n

    def test_bound_scales_like_inverse_square(self):
        assert abs(float(b_bound(300)) * 300**2 - 1) < 0.02
