"""Command-line interface: outputs, manifests, exit codes."""

import json

import pytest

from invbzf.cli import main


def write_beta(tmp_path, entries, name="beta.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"beta": entries}))
    return str(path)


class TestSolve:
    def test_enum_concentrated(self, tmp_path, capsys):
        beta = write_beta(tmp_path, ["3/4", "1/4"])
        code = main(["solve", "--beta-file", beta, "--class", "S", "--metric", "d1",
                     "--method", "enum"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["distance"] == "1/2"
        assert out["status"] == "proved-optimal"

    def test_bisect_writes_manifest(self, tmp_path, capsys):
        beta = write_beta(tmp_path, ["1/3", "1/3", "1/3"])
        out_file = tmp_path / "result.json"
        code = main(["solve", "--beta-file", beta, "--method", "bisect",
                     "--out", str(out_file)])
        assert code == 0
        assert out_file.exists()
        manifest = json.loads((tmp_path / "result.json.manifest.json").read_text())
        assert manifest["command"] == "solve"
        assert manifest["parameters"]["method"] == "bisect"
        assert manifest["outputs"] == [str(out_file)]
        payload = json.loads(out_file.read_text())
        assert payload["distance_float"] == 0.0

    def test_hill_method(self, tmp_path, capsys):
        beta = write_beta(tmp_path, ["1/3", "1/3", "1/3"])
        code = main(["solve", "--beta-file", beta, "--method", "hill",
                     "--restarts", "2", "--seed", "1"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["status"] == "heuristic-only"
        assert out["distance_float"] == 0.0

    def test_invalid_input_exit_2(self, tmp_path, capsys):
        assert main(["solve", "--beta-file", str(tmp_path / "nope.json")]) == 2

    def test_budget_exhausted_exit_3(self, tmp_path, capsys):
        beta = write_beta(tmp_path, ["3/4", "1/4", "0", "0", "0", "0"])
        code = main(["solve", "--beta-file", beta, "--class", "S", "--method",
                     "bisect", "--budget", "40"])
        out = json.loads(capsys.readouterr().out)
        assert code == 3
        assert out["status"] == "bracketed"
        assert "bracket" in out

    def test_population_target(self, tmp_path, capsys):
        pop = tmp_path / "pop.csv"
        pop.write_text("name,population\nA,4\nB,1\n")
        code = main(["solve", "--population", str(pop), "--class", "W",
                     "--method", "enum"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["distance_float"] == pytest.approx(1 / 3, abs=1e-12)


class TestGridStats:
    def test_qbar_n3_matches_published(self, capsys):
        code = main(["grid-stats", "--n", "3", "--rule", "qbar", "--metric", "d1"])
        out = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert out[0] == "n,rule,metric,median,average,q10,q05,q01"
        fields = out[1].split(",")
        assert fields[:3] == ["3", "qbar", "d1"]
        assert float(fields[3]) == pytest.approx(0.320, abs=1e-3)
        assert float(fields[4]) == pytest.approx(0.332, abs=1e-3)

    def test_sampled_rows(self, capsys):
        code = main(["grid-stats", "--n", "9", "--rule", "half", "--metric", "d1",
                     "--sample", "150", "--seed", "5"])
        out = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert float(out[1].split(",")[3]) > 0

    def test_optimal_rule_small_n(self, capsys):
        code = main(["grid-stats", "--n", "3", "--rule", "optimal", "--metric", "d1"])
        out = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert float(out[1].split(",")[3]) == pytest.approx(0.2400, abs=1e-3)


class TestOtherCommands:
    def test_enum_count(self, capsys):
        assert main(["enum-count", "--n", "5", "--class", "W"]) == 0
        assert capsys.readouterr().out.strip() == "W,5,117"

    def test_bounds_showcase(self, tmp_path, capsys):
        beta = write_beta(tmp_path, ["3/4", "1/4", "0", "0"])
        code = main(["bounds", "--beta-file", beta, "--k", "2", "--epsilon", "1/18"])
        out = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        fields = out[1].split(",")
        assert fields[1] == "1/18"
        assert float(fields[4]) == pytest.approx(1 / 9, abs=1e-6)

    def test_bounds_sweep_default(self, tmp_path, capsys):
        beta = write_beta(tmp_path, ["3/4", "1/4", "0", "0"])
        code = main(["bounds", "--beta-file", beta, "--k", "2"])
        out = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert float(out[1].split(",")[4]) == pytest.approx(1 / 9, abs=1e-6)

    def test_family_table(self, capsys):
        code = main(["family-table", "--metric", "d1", "--n-min", "5", "--n-max", "6",
                     "--class", "C", "--solver-cap", "6"])
        out = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        row5 = out[1].split(",")
        assert float(row5[2]) == pytest.approx(0.177778, abs=1e-6)
        assert float(row5[4]) == pytest.approx(0.158730, abs=1e-6)

    def test_export_ilp(self, tmp_path, capsys):
        beta = write_beta(tmp_path, ["1/3", "1/3", "1/3"])
        out = tmp_path / "model.lp"
        code = main(["export-ilp", "--beta-file", beta, "--class", "S",
                     "--metric", "d1", "--alpha", "1/10", "--out", str(out)])
        assert code == 0
        text = out.read_text()
        assert text.startswith("\\ inverse power index feasibility")
        assert (tmp_path / "model.lp.manifest.json").exists()

    def test_reproduce_table1_small(self, capsys):
        # full table 1 runs in the acceptance suite; here only the output shape
        code = main(["reproduce", "--table", "6"])
        out = capsys.readouterr().out
        assert code == 0
        assert "PASS" in out and "SKIP" in out and "FAIL" not in out
