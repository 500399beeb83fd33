import pytest

from unruh_steering.cli import main
from unruh_steering.sweep import CSV_HEADER


class TestSweepCommand:
    def test_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code = main(
            [
                "sweep",
                "--scenario", "qubit",
                "--p", "0.0,0.1",
                "--r", "0:0.7:3",
                "--quantities", "d_total,steer_ab",
                "--out", str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 2 * 3 * 2
        assert "wrote 12 records" in capsys.readouterr().out

    def test_json_format(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = main(
            ["sweep", "--scenario", "none", "--p", "0.25", "--quantities", "lqu",
             "--format", "json", "--out", str(out)]
        )
        assert code == 0
        assert out.read_text().startswith("[")

    def test_invalid_p_is_config_error(self, tmp_path, capsys):
        code = main(
            ["sweep", "--scenario", "none", "--p", "0.9", "--quantities", "lqu",
             "--out", str(tmp_path / "x.csv")]
        )
        assert code == 1
        assert "configuration error" in capsys.readouterr().err

    def test_bad_r_spec_is_config_error(self, tmp_path):
        code = main(
            ["sweep", "--scenario", "qubit", "--p", "0.1", "--r", "0..1",
             "--quantities", "d_total", "--out", str(tmp_path / "x.csv")]
        )
        assert code == 1

    def test_unknown_flag_is_config_error(self, capsys):
        assert main(["sweep", "--scenario", "warp"]) == 1

    def test_missing_directory_is_io_error(self, tmp_path, capsys):
        code = main(
            ["sweep", "--scenario", "none", "--p", "0.1", "--quantities", "d_total",
             "--out", str(tmp_path / "no_dir" / "x.csv")]
        )
        assert code == 3
        assert "i/o error" in capsys.readouterr().err

    def test_missing_required_setting(self, capsys):
        assert main(["sweep", "--p", "0.1"]) == 1
        assert "--scenario" in capsys.readouterr().err


class TestConfigFile:
    def test_config_file_drives_sweep(self, tmp_path):
        out = tmp_path / "from_config.csv"
        config = tmp_path / "sweep.cfg"
        config.write_text(
            "# steering sweep\n"
            "scenario = qutrit\n"
            "p = 0.0,0.1\n"
            "r = 0:0.5:3\n"
            "quantities = d_total\n"
            f"out = {out}\n"
        )
        assert main(["sweep", "--config", str(config)]) == 0
        assert len(out.read_text().splitlines()) == 1 + 2 * 3

    def test_flags_override_config(self, tmp_path):
        flagged = tmp_path / "flagged.csv"
        config = tmp_path / "sweep.cfg"
        config.write_text(
            f"scenario = qubit\np = 0.3\nquantities = d_total\nout = {tmp_path / 'ignored.csv'}\n"
        )
        assert main(["sweep", "--config", str(config), "--out", str(flagged)]) == 0
        assert flagged.exists()
        assert not (tmp_path / "ignored.csv").exists()

    def test_unknown_key_rejected(self, tmp_path, capsys):
        config = tmp_path / "sweep.cfg"
        config.write_text("acceleration = 3\n")
        assert main(["sweep", "--config", str(config)]) == 1
        assert "unknown key" in capsys.readouterr().err

    def test_malformed_line_rejected(self, tmp_path):
        config = tmp_path / "sweep.cfg"
        config.write_text("scenario qubit\n")
        assert main(["sweep", "--config", str(config)]) == 1

    def test_missing_config_file(self, tmp_path):
        assert main(["sweep", "--config", str(tmp_path / "none.cfg")]) == 1


class TestPresetCommand:
    def test_runs_preset(self, tmp_path, capsys):
        out = tmp_path / "fig4a.csv"
        assert main(["preset", "fig4a", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 101 * 3
        assert "preset fig4a" in capsys.readouterr().out

    def test_unknown_preset_is_config_error(self, tmp_path):
        assert main(["preset", "fig9z", "--out", str(tmp_path / "x.csv")]) == 1


class TestVerifyCommand:
    def test_verify_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out
        assert "verification passed" in out


def test_help_exits_zero():
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
