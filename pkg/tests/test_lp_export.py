"""Structure of exported LP files."""

import re
from fractions import Fraction

import pytest

from invbzf.lp_export import export_ilp, muroga_weight_bound
from invbzf.solver import FeasibilityProblem
from invbzf.targets import Metric

F = Fraction


def export_text(tmp_path, beta, cls="S", metric=None, alpha=F(1, 10)):
    metric = metric or Metric.d1()
    path = tmp_path / "model.lp"
    export_ilp(FeasibilityProblem(beta, cls, metric, alpha), path)
    return path.read_text()


def constraint_lines(text):
    body = text.split("Subject To")[1].split("Bounds")[0]
    return [ln for ln in body.splitlines() if ln.strip()]


class TestStructure:
    def test_variable_counts_n3(self, tmp_path):
        text = export_text(tmp_path, (F(1, 2), F(3, 10), F(1, 5)))
        binaries = text.split("Binary")[1].split("End")[0].split()
        xs = [v for v in binaries if v.startswith("x")]
        ys = [v for v in binaries if v.startswith("y")]
        assert len(xs) == 8
        assert len(ys) == 12
        dist_rows = [ln for ln in constraint_lines(text) if ln.strip().startswith("dist")]
        assert len(dist_rows) == 1

    def test_boundary_bounds(self, tmp_path):
        text = export_text(tmp_path, (F(1, 2), F(3, 10), F(1, 5)))
        bounds = text.split("Bounds")[1]
        assert " x0 = 0" in bounds
        assert " x7 = 1" in bounds

    def test_weighted_big_m_rows(self, tmp_path):
        text = export_text(tmp_path, (F(1, 2), F(3, 10), F(1, 5)), cls="W")
        lines = constraint_lines(text)
        wlo = [ln for ln in lines if ln.strip().startswith("wlo")]
        whi = [ln for ln in lines if ln.strip().startswith("whi")]
        assert len(wlo) == 8 and len(whi) == 8

    def test_dinf_has_row_per_player(self, tmp_path):
        text = export_text(
            tmp_path, (F(1, 2), F(1, 2)), metric=Metric.dinf(), alpha=F(1, 4)
        )
        dist_rows = [ln for ln in constraint_lines(text) if ln.strip().startswith("dist")]
        assert len(dist_rows) == 2

    def test_integer_coefficients_only(self, tmp_path):
        text = export_text(tmp_path, (F(1, 3), F(1, 3), F(1, 3)))
        assert "." not in text.split("Subject To")[1]

    def test_rows_well_formed(self, tmp_path):
        text = export_text(tmp_path, (F(1, 2), F(1, 4), F(1, 4)), cls="W")
        for ln in constraint_lines(text):
            assert re.match(r"^ \w+: .* (<=|>=|=) -?\d+$", ln), ln

    def test_player_cap(self, tmp_path):
        beta = tuple(F(1, 13) for _ in range(13))
        with pytest.raises(ValueError):
            export_text(tmp_path, beta)

    def test_muroga_bound_grows(self):
        assert muroga_weight_bound(3) >= 2
        assert muroga_weight_bound(8) > muroga_weight_bound(5)
