import json

import pytest

from metric_forge.cli import main, parse_grid, parse_scalar, UsageError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_scalar_forms(self):
        from fractions import Fraction

        assert parse_scalar("1/2") == Fraction(1, 2)
        assert parse_scalar("-2/3") == Fraction(-2, 3)
        assert parse_scalar("0") == 0
        assert parse_scalar("0.5") == 0.5
        with pytest.raises(UsageError):
            parse_scalar("nope")

    def test_grid(self):
        assert parse_grid("0:1:3") == [0.0, 0.5, 1.0]
        assert parse_grid("0:0:1") == [0.0]
        with pytest.raises(UsageError):
            parse_grid("0:1:1")
        with pytest.raises(UsageError):
            parse_grid("0:1")


class TestHamiltonianCommand:
    def test_exact_json_golden(self, capsys):
        code, out, _ = run_cli(
            capsys, "hamiltonian", "--n", "2", "--lambda", "1/2", "--format", "json"
        )
        assert code == 0
        assert json.loads(out) == {
            "n": 2,
            "lambda": "1/2",
            "matrix": [["2", "-3/2"], ["-1/2", "2"]],
        }

    def test_odd_size_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "hamiltonian", "--n", "3", "--lambda", "0")
        assert code == 2
        assert "even" in err

    def test_free_member_is_symmetric(self, capsys):
        code, out, _ = run_cli(capsys, "hamiltonian", "--n", "4", "--lambda", "0")
        grid = json.loads(out)["matrix"]
        assert code == 0
        for i in range(4):
            for k in range(4):
                assert grid[i][k] == grid[k][i]

    def test_json_roundtrip_exactness(self, capsys):
        from fractions import Fraction

        _, out, _ = run_cli(capsys, "hamiltonian", "--n", "6", "--lambda", "-2/7")
        grid = json.loads(out)["matrix"]
        assert Fraction(grid[2][3]) == Fraction(-1) - Fraction(-2, 7)
        assert Fraction(grid[3][2]) == Fraction(-1) + Fraction(-2, 7)


class TestSpectrumCommand:
    def test_real_branch_sweep(self, capsys):
        code, out, _ = run_cli(
            capsys, "spectrum", "--n", "4", "--grid", "-0.99:0.99:199"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("lambda,re_e_1")
        rows = lines[1:]
        assert len(rows) == 199
        assert all(row.endswith(",true") for row in rows)

    def test_complex_branch_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--n", "4", "--grid", "1.05:1.2:4")
        rows = out.strip().splitlines()[1:]
        assert code == 0
        assert len(rows) == 4
        assert all(row.endswith(",false") for row in rows)

    def test_single_point_free_chain(self, capsys):
        import math

        code, out, _ = run_cli(capsys, "spectrum", "--n", "6", "--grid", "0:0:1")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        values = [float(v) for v in row[1:7]]
        golden = sorted(2 - 2 * math.cos(k * math.pi / 7) for k in range(1, 7))
        assert max(abs(a - b) for a, b in zip(values, golden)) < 1e-12

    def test_bad_grid(self, capsys):
        code, _, err = run_cli(capsys, "spectrum", "--n", "4", "--grid", "1:2:1")
        assert code == 2 and "grid" in err


class TestMetricBasisCommand:
    def test_size4_central_entries(self, capsys):
        code, out, _ = run_cli(capsys, "metric", "basis", "--n", "4")
        assert code == 0
        payload = json.loads(out)
        by_j = {el["j"]: el for el in payload["elements"]}
        entries = {(e["i"], e["k"]): e["degree"] for e in by_j[2]["entries"]}
        assert entries == {(1, 2): 1, (2, 1): 1, (2, 3): 2, (3, 2): 2, (3, 4): 1, (4, 3): 1}

    def test_size2_family(self, capsys):
        _, out, _ = run_cli(capsys, "metric", "basis", "--n", "2")
        payload = json.loads(out)
        first, second = payload["elements"]
        assert {(e["i"], e["k"]): e["degree"] for e in first["entries"]} == {
            (1, 1): 1,
            (2, 2): 1,
        }
        assert {(e["i"], e["k"]): e["degree"] for e in second["entries"]} == {
            (1, 2): 0,
            (2, 1): 0,
        }

    def test_size6_third_member_matches_print(self, capsys):
        _, out, _ = run_cli(capsys, "metric", "basis", "--n", "6", "--j", "3")
        payload = json.loads(out)
        (element,) = payload["elements"]
        entries = {(e["i"], e["k"]): e["degree"] for e in element["entries"]}
        assert entries == {
            (1, 3): 1, (3, 1): 1, (2, 2): 1, (2, 4): 2, (4, 2): 2, (3, 3): 3,
            (3, 5): 2, (5, 3): 2, (4, 4): 3, (4, 6): 1, (6, 4): 1, (5, 5): 1,
        }

    def test_numeric_mode_evaluates_entries(self, capsys):
        _, out, _ = run_cli(
            capsys, "metric", "basis", "--n", "4", "--j", "1", "--lambda", "1/3"
        )
        payload = json.loads(out)
        (element,) = payload["elements"]
        values = {(e["i"], e["k"]): e["value"] for e in element["entries"]}
        assert values[(1, 1)] == "2/3"
        assert values[(4, 4)] == "4/3"

    def test_numeric_mode_float_coupling(self, capsys):
        _, out, _ = run_cli(
            capsys, "metric", "basis", "--n", "4", "--j", "1", "--lambda", "0.25"
        )
        payload = json.loads(out)
        values = {
            (e["i"], e["k"]): e["value"] for e in payload["elements"][0]["entries"]
        }
        assert values[(1, 1)] == 0.75
        assert values[(4, 4)] == 1.25

    def test_polynomial_coefficients(self, capsys):
        _, out, _ = run_cli(capsys, "metric", "basis", "--n", "4", "--j", "2")
        payload = json.loads(out)
        entries = {
            (e["i"], e["k"]): e["coefficients"]
            for e in payload["elements"][0]["entries"]
        }
        assert entries[(1, 2)] == [1, -1]
        assert entries[(2, 3)] == [1, 0, -1]
        assert entries[(3, 4)] == [1, 1]


class TestMetricVerifyCommand:
    @pytest.mark.parametrize("n,lam", [(6, "1/2"), (8, "2/3")])
    def test_passes_cleanly(self, capsys, n, lam):
        code, out, _ = run_cli(
            capsys, "metric", "verify", "--n", str(n), "--lambda", lam
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["failed"] == 0
        assert {c["name"] for c in payload["checks"]} == {
            "closed_form_intertwining",
            "oracle_dimension",
            "span_equivalence",
            "lambda0_reduction",
            "reflection_symmetry",
        }
        assert all(c["passed"] for c in payload["checks"])

    def test_odd_size_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "metric", "verify", "--n", "5", "--lambda", "1/2")
        assert code == 2 and err

    def test_float_coupling_rejected(self, capsys):
        code, _, err = run_cli(capsys, "metric", "verify", "--n", "4", "--lambda", "0.5")
        assert code == 2
        assert "exact" in err


class TestPositivityCommand:
    def test_single_positive(self, capsys):
        code, out, _ = run_cli(
            capsys, "positivity", "--n", "2", "--lambda", "0.6", "--alpha", "1,0.5"
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["positive"] is True
        assert payload["closed_form_positive"] is True

    def test_single_not_positive(self, capsys):
        code, out, _ = run_cli(
            capsys, "positivity", "--n", "2", "--lambda", "0.6", "--alpha", "1,0.9"
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["positive"] is False
        assert payload["closed_form_positive"] is False

    def test_alpha_length_mismatch(self, capsys):
        code, _, err = run_cli(
            capsys, "positivity", "--n", "4", "--lambda", "0", "--alpha", "1,2"
        )
        assert code == 2 and "alpha" in err

    def test_sampling_csv_deterministic_with_agreement(self, capsys):
        args = (
            "positivity", "--n", "4", "--lambda", "0",
            "--sample", "200", "--seed", "7",
        )
        code, out_a, _ = run_cli(capsys, *args)
        assert code == 0
        code, out_b, _ = run_cli(capsys, *args)
        assert out_a == out_b
        lines = out_a.strip().splitlines()
        header = lines[0].split(",")
        assert header[0] == "index"
        assert lines[-1].startswith("# fraction_positive = ")
        pos_col = header.index("positive")
        cf_col = header.index("closed_form_positive")
        nb_col = header.index("near_boundary")
        for row in lines[1:-1]:
            cells = row.split(",")
            if cells[nb_col] == "false":
                assert cells[pos_col] == cells[cf_col]


class TestContinuumCommand:
    def test_convergence_sweep(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "continuum", "--lambda", "0.5", "--sizes", "40,80,160,320", "--state", "1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "size,h,residual,central_amplitude"
        assert lines[-1].startswith("# slope = ")
        slope = float(lines[-1].split("=")[1])
        assert 1.7 <= slope <= 2.3

    def test_free_coupling_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "continuum", "--lambda", "0", "--sizes", "40,80"
        )
        assert code == 2 and err

    def test_central_amplitude_decreasing(self, capsys):
        code, out, _ = run_cli(
            capsys, "continuum", "--lambda", "0.5", "--sizes", "20,40"
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()[1:-1]]
        amplitudes = [float(r[3]) for r in rows]
        assert amplitudes[1] < amplitudes[0]


class TestDeterminism:
    def test_byte_identical_reruns(self, capsys):
        for args in (
            ("hamiltonian", "--n", "4", "--lambda", "0.37"),
            ("spectrum", "--n", "4", "--grid", "-0.5:0.5:11"),
            ("metric", "basis", "--n", "6"),
        ):
            _, first, _ = run_cli(capsys, *args)
            _, second, _ = run_cli(capsys, *args)
            assert first == second

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "h.json"
        code, out, _ = run_cli(
            capsys, "hamiltonian", "--n", "2", "--lambda", "1/2",
            "--output", str(target),
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["lambda"] == "1/2"
