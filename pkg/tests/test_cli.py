import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from jcdimer import cli

GOLDEN = Path(__file__).parent / "golden" / "default_sweep.csv"


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGround:
    def test_json_report_fields(self, capsys):
        code, out, _ = run(capsys, "ground", "--delta", "0", "--j", "0.1", "--a", "0.1")
        assert code == 0
        payload = json.loads(out)
        assert payload["model"] == "effective"
        assert payload["subspace_probabilities"]["p1"] > 0.9
        assert set(payload["order_parameters"]) == {"var_n1", "var_na1", "product"}

    def test_uncoupled_probability_prints_exactly_one(self, capsys):
        code, out, _ = run(capsys, "ground", "--delta", "0", "--j", "0.1", "--a", "0")
        assert code == 0
        assert json.loads(out)["subspace_probabilities"]["p1"] == 1.0

    def test_atomic_limit(self, capsys):
        code, out, _ = run(capsys, "ground", "--delta", "-10", "--j", "0.1", "--a", "0.1")
        assert code == 0
        assert json.loads(out)["excitation_character"]["atomic"] > 0.95

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "ground", "--format", "csv")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header == cli.GROUND_CSV_HEADER
        assert len(row.split(",")) == len(header.split(","))

    def test_full_model_flag(self, capsys):
        code, out, _ = run(capsys, "ground", "--full-model", "--j", "0.2")
        assert code == 0
        assert json.loads(out)["model"] == "full"

    def test_energy_scales_linearly_with_g(self, capsys):
        _, out1, _ = run(capsys, "ground", "--delta", "1", "--j", "0.5", "--a", "0.1")
        _, out2, _ = run(capsys, "ground", "--delta", "1", "--j", "0.5", "--a", "0.1",
                         "--g", "2.5")
        e1 = json.loads(out1)["energy"]
        e2 = json.loads(out2)["energy"]
        assert e2 == pytest.approx(2.5 * e1, rel=1e-9)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "ground", "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["model"] == "effective"

    def test_higher_sector_report(self, capsys):
        code, out, _ = run(capsys, "ground", "--n", "3")
        assert code == 0
        assert json.loads(out)["subspace_probabilities"] is None


class TestSweep:
    def test_small_grid_csv(self, capsys):
        code, out, _ = run(capsys, "sweep", "--resolution", "3",
                           "--delta-range", "-1", "1", "--j-range", "0", "1")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == cli.SWEEP_CSV_HEADER
        assert len(lines) == 1 + 9
        # delta-major ascending, then j ascending
        first = lines[1].split(",")
        second = lines[2].split(",")
        assert float(first[0]) == -1.0 and float(second[0]) == -1.0
        assert float(first[1]) < float(second[1])

    def test_round_trip_at_printed_precision(self, capsys):
        code, out, _ = run(capsys, "sweep", "--resolution", "4",
                           "--delta-range", "-2", "2", "--j-range", "0", "3")
        assert code == 0
        header, numbers, labels = cli.read_phase_grid_csv(out)
        lines = [header]
        for row, label in zip(numbers, labels):
            lines.append(",".join([cli.fmt(value) for value in row] + [label]))
        assert "\n".join(lines) + "\n" == out

    def test_byte_identical_reruns(self, capsys):
        args = ("sweep", "--resolution", "5")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_custom_thresholds_change_labels(self, capsys):
        _, strict, _ = run(capsys, "sweep", "--resolution", "3", "--sf-eps", "1e9",
                           "--pol-eps", "1e9")
        labels = {line.split(",")[-1] for line in strict.strip().split("\n")[1:]}
        assert labels == {"atomic-insulator"}

    def test_structured_text_rejected(self, capsys):
        code, _, err = run(capsys, "sweep", "--format", "structured-text")
        assert code == 2
        assert "csv" in err

    def test_unwritable_path_is_io_error(self, capsys):
        code, _, err = run(capsys, "sweep", "--resolution", "2",
                           "--out", "/nonexistent-dir/grid.csv")
        assert code == 1
        assert "error" in err

    def test_golden_default_sweep(self, capsys, tmp_path):
        target = tmp_path / "default_sweep.csv"
        code, _, _ = run(capsys, "sweep", "--out", str(target))
        assert code == 0
        assert target.read_bytes() == GOLDEN.read_bytes()


class TestGaps:
    def test_default_curve(self, capsys):
        code, out, _ = run(capsys, "gaps")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == cli.GAPS_CSV_HEADER
        first = [float(x) for x in lines[1].split(",")]
        last = [float(x) for x in lines[-1].split(",")]
        assert abs(first[1] - (2 * math.sqrt(2) - 2)) < 1e-11
        assert last[1] < 0.01

    def test_gap_difference_identity_on_every_row(self, capsys):
        delta = 0.75
        code, out, _ = run(capsys, "gaps", "--delta", str(delta), "--resolution", "40")
        assert code == 0
        for line in out.strip().split("\n")[1:]:
            j, _, de2, de3, _ = (float(x) for x in line.split(","))
            assert abs((de2 - de3) - (delta + j)) < 1e-10


class TestValidate:
    def test_validate_passes(self, capsys):
        code, out, _ = run(capsys, "validate", "--draws", "20")
        assert code == 0
        lines = out.strip().split("\n")
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert "5 checks passed" in lines[-1]


class TestConfigFile:
    def test_file_overrides_defaults_flags_override_file(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("j = 2.0\ndelta = 5.0\n# comment\na = 0.0\n")
        code, out, _ = run(capsys, "ground", "--config", str(config),
                           "--delta", "-1.0")
        assert code == 0
        payload = json.loads(out)
        assert payload["params"]["j"] == 2.0      # from file
        assert payload["params"]["delta"] == -1.0  # flag wins
        assert payload["params"]["a"] == 0.0       # from file

    def test_unknown_key_rejected(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("coupling = 2.0\n")
        code, _, err = run(capsys, "ground", "--config", str(config))
        assert code == 2
        assert "unknown key" in err

    def test_missing_config_rejected(self, capsys, tmp_path):
        code, _, err = run(capsys, "ground", "--config", str(tmp_path / "nope.cfg"))
        assert code == 2

    def test_range_value_in_config(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("delta_range = -1 1\nj_range = 0, 2\nresolution = 3\n")
        code, out, _ = run(capsys, "sweep", "--config", str(config))
        assert code == 0
        assert len(out.strip().split("\n")) == 10


class TestUsageErrors:
    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["ground", "--bogus"])
        assert exc.value.code == 2

    def test_missing_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2

    def test_nonfinite_physics_value_rejected(self, capsys):
        code, _, err = run(capsys, "ground", "--delta", "nan")
        assert code == 2
        assert "finite" in err

    def test_nonpositive_g_rejected(self, capsys):
        code, _, _ = run(capsys, "ground", "--g", "0")
        assert code == 2

    def test_bad_resolution_rejected(self, capsys):
        code, _, _ = run(capsys, "sweep", "--resolution", "1")
        assert code == 2

    def test_plot_requires_out(self, capsys):
        code, _, err = run(capsys, "gaps", "--plot")
        assert code == 2
        assert "--out" in err


class TestPlots:
    def test_sweep_plot_files(self, capsys, tmp_path):
        target = tmp_path / "grid.csv"
        code, _, err = run(capsys, "sweep", "--resolution", "5",
                           "--out", str(target), "--plot")
        assert code == 0
        for suffix in ("var_n1", "var_na1", "product", "phases"):
            assert (tmp_path / f"grid_{suffix}.png").exists()
        assert err.count("wrote") == 4

    def test_gaps_plot_file(self, capsys, tmp_path):
        target = tmp_path / "gaps.csv"
        code, _, _ = run(capsys, "gaps", "--resolution", "10", "--out", str(target),
                         "--plot")
        assert code == 0
        assert (tmp_path / "gaps.png").exists()

    def test_ground_plot_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _, _ = run(capsys, "ground", "--out", str(target), "--plot")
        assert code == 0
        assert (tmp_path / "report.png").exists()


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "jcdimer", "gaps", "--resolution", "3"],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout.startswith(cli.GAPS_CSV_HEADER)
