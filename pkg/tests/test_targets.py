"""Targets, metrics, square-root rule, and the simplex grid."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invbzf.targets import (
    Metric,
    PopulationVector,
    TargetError,
    TargetVector,
    distance,
    grid_count,
    grid_points,
    grid_sample,
    grid_unrank,
    load_population_csv,
    sqrt_rule_target,
)

F = Fraction


def brute_grid_count(n: int, m: int) -> int:
    """Independent counter: nested scan over non-increasing numerators."""

    def rec(remaining, parts, cap):
        if parts == 1:
            return 1 if remaining <= cap else 0
        return sum(rec(remaining - c, parts - 1, c) for c in range(min(cap, remaining) + 1))

    return rec(m, n, m)


rational_vec = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.fractions(min_value=0, max_value=1), min_size=n, max_size=n)
)


class TestDistance:
    def test_d1_max_on_simplex(self):
        assert distance(Metric.d1(), (1, 0), (0, 1)) == 2

    def test_d1_example(self):
        assert distance(
            Metric.d1(), (F(3, 5), F(1, 5), F(1, 5)), (F(1, 3), F(1, 3), F(1, 3))
        ) == F(8, 15)

    def test_dinf(self):
        assert distance(Metric.dinf(), (F(3, 5), F(1, 5), F(1, 5)), (F(1, 3),) * 3) == F(
            4, 15
        )

    def test_d1w_uniform_population(self):
        pop = PopulationVector(("a", "b", "c", "d"), (7, 7, 7, 7))
        x, y = (F(1, 2), F(1, 4), F(1, 8), F(1, 8)), (F(1, 4),) * 4
        got = distance(Metric.d1_weighted(pop), x, y)
        want = float(distance(Metric.d1(), x, y)) / 2.0  # sqrt(1/4) weights
        assert abs(float(got) - want) < 1e-40

    def test_length_mismatch(self):
        with pytest.raises(TargetError):
            distance(Metric.d1(), (1,), (F(1, 2), F(1, 2)))

    @given(rational_vec, rational_vec, rational_vec)
    @settings(max_examples=50, deadline=None)
    def test_metric_axioms(self, x, y, z):
        k = min(len(x), len(y), len(z))
        x, y, z = x[:k], y[:k], z[:k]
        for m in (Metric.d1(), Metric.dinf()):
            dxy = distance(m, x, y)
            assert dxy == distance(m, y, x)
            assert (dxy == 0) == (x == y)
            assert dxy <= distance(m, x, z) + distance(m, z, y)

    @given(rational_vec, rational_vec)
    @settings(max_examples=50, deadline=None)
    def test_norm_sandwich(self, x, y):
        k = min(len(x), len(y))
        x, y = x[:k], y[:k]
        dinf = distance(Metric.dinf(), x, y)
        d1 = distance(Metric.d1(), x, y)
        assert dinf <= d1 <= k * dinf


class TestSqrtRule:
    def test_perfect_squares_exact(self):
        t = sqrt_rule_target(PopulationVector(("a", "b"), (4, 1)))
        assert t.vector.beta == (F(2, 3), F(1, 3))
        assert t.error_bound == 0

    def test_symmetric(self):
        t = sqrt_rule_target(PopulationVector(("a", "b", "c"), (1, 1, 1)))
        assert t.vector.beta == (F(1, 3),) * 3

    def test_irrational_50_digits(self):
        t = sqrt_rule_target(PopulationVector(("a", "b"), (2, 1)))
        with mpmath.workdps(80):
            true0 = mpmath.sqrt(2) / (1 + mpmath.sqrt(2))
            err = abs(mpmath.mpf(t.vector.beta[0].numerator) / t.vector.beta[0].denominator - true0)
        assert err < mpmath.mpf(10) ** -45
        assert float(t.vector.beta[0]) == pytest.approx(0.585786, abs=1e-6)
        assert float(t.vector.beta[1]) == pytest.approx(0.414214, abs=1e-6)
        bound = mpmath.mpf(t.error_bound.numerator) / t.error_bound.denominator
        assert err <= bound
        assert sum(t.vector.beta) == 1

    def test_target_invariants(self):
        with pytest.raises(TargetError):
            TargetVector((F(1, 2), F(1, 4)))
        with pytest.raises(TargetError):
            TargetVector((F(3, 2), F(-1, 2)))


class TestGrid:
    def test_counts_published(self):
        expected = {2: 51, 3: 884, 4: 8037, 5: 46262, 6: 189509, 7: 596763}
        for n, c in expected.items():
            assert grid_count(n) == c

    def test_counts_brute_force(self):
        for n in (2, 3, 4):
            for m in (4, 7, 10):
                assert grid_count(n, F(1, m)) == brute_grid_count(n, m)

    def test_quarter_step_example(self):
        pts = [tuple(float(b) for b in tv.beta) for tv in grid_points(3, F(1, 4))]
        assert pts == [
            (0.5, 0.25, 0.25),
            (0.5, 0.5, 0.0),
            (0.75, 0.25, 0.0),
            (1.0, 0.0, 0.0),
        ]

    def test_point_invariants(self):
        for tv in grid_points(4, F(1, 10)):
            assert sum(tv.beta) == 1
            assert all(a >= b for a, b in zip(tv.beta, tv.beta[1:]))
            assert tv.beta[-1] >= 0

    def test_unrank_is_enumeration_order(self):
        pts = list(grid_points(3, F(1, 12)))
        for r, tv in enumerate(pts):
            assert grid_unrank(3, F(1, 12), r) == tv
        with pytest.raises(TargetError):
            grid_unrank(3, F(1, 12), len(pts))

    def test_sample_deterministic(self):
        a = grid_sample(4, F(1, 100), 25, seed=7)
        b = grid_sample(4, F(1, 100), 25, seed=7)
        assert a == b
        assert a != grid_sample(4, F(1, 100), 25, seed=8)

    def test_sample_uniform_three_sigma(self):
        draws = grid_sample(2, F(1, 100), 510, seed=11)
        counts = {}
        for tv in draws:
            counts[tv.beta] = counts.get(tv.beta, 0) + 1
        # each of the 51 points: mean 10, sigma ~3.13
        assert all(abs(counts.get(tv.beta, 0) - 10) <= 9.5 for tv in grid_points(2, F(1, 100)))

    def test_sample_large_n_valid(self):
        for tv in grid_sample(15, F(1, 100), 200, seed=3):
            assert sum(tv.beta) == 1
            assert all(a >= b for a, b in zip(tv.beta, tv.beta[1:]))


class TestPopulationCsv:
    def test_two_rows(self, tmp_path):
        f = tmp_path / "p.csv"
        f.write_text("name,population\nA,4\nB,1\n")
        pv = load_population_csv(f)
        assert pv.populations == (4, 1)
        assert pv.names == ("A", "B")

    def test_empty_data(self, tmp_path):
        f = tmp_path / "p.csv"
        f.write_text("name,population\n")
        with pytest.raises(TargetError):
            load_population_csv(f)

    def test_bad_rows(self, tmp_path):
        f = tmp_path / "p.csv"
        f.write_text("name,population\nA,0\n")
        with pytest.raises(TargetError):
            load_population_csv(f)
        f.write_text("name,population\nA,4\nA,1\n")
        with pytest.raises(TargetError):
            load_population_csv(f)
        f.write_text("name,population\nA,x\n")
        with pytest.raises(TargetError):
            load_population_csv(f)
