import io
import json
import subprocess
import sys

import numpy as np
import pytest

from tfatom.cli import UsageError, main, parse_z


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestParseZ:
    def test_forms(self):
        assert parse_z("1,2,3") == [1, 2, 3]
        assert parse_z("1-4") == [1, 2, 3, 4]
        assert parse_z("1:30:10") == [1, 11, 21]
        assert parse_z("3, 1,3") == [1, 3]
        assert parse_z("2.5") == [2.5]

    @pytest.mark.parametrize("text", ["", "0", "a", "1-x", "-5"])
    def test_rejects(self, text):
        with pytest.raises(UsageError):
            parse_z(text)


class TestCommands:
    def test_correction(self, capsys):
        code, out = run(capsys, "correction", "--z", "1")
        report = json.loads(out)
        assert code == 0 and len(report) == 1
        assert report[0]["delta_e_closed"] == pytest.approx(-0.04907, abs=5e-5)
        assert report[0]["delta_e_oracle"] == pytest.approx(report[0]["delta_e_closed"], rel=1e-6)
        assert report[0]["unit"] == "hartree"

    def test_correction_ev(self, capsys):
        _, out = run(capsys, "correction", "--z", "1", "--ev")
        assert json.loads(out)[0]["delta_e_closed"] == pytest.approx(-0.04907 * 27.211386, rel=1e-3)

    def test_sweep(self, capsys):
        code, out = run(capsys, "sweep", "--z", "1-3")
        data = np.loadtxt(io.StringIO(out), delimiter=",", skiprows=1)
        assert code == 0 and out.startswith("Z,deltaE_closed,deltaE_oracle\n")
        assert data.shape == (3, 3)
        ratio = data[:, 2] / data[:, 0] ** (5 / 3)
        assert np.ptp(ratio) < 1e-8

    def test_sweep_parallel_matches_serial(self, capsys):
        _, serial = run(capsys, "sweep", "--z", "1,4")
        _, parallel = run(capsys, "sweep", "--z", "1,4", "--jobs", "2")
        assert serial == parallel

    def test_moments(self, capsys):
        code, out = run(capsys, "moments")
        m = json.loads(out)
        assert code == 0 and m["m_norm"] == pytest.approx(1, abs=1e-4)

    def test_solve_repeatable(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["solve", "--format", "csv", "--out", str(a)]) == 0
        assert main(["solve", "--format", "csv", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().startswith("x,f,fprime\n")

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "tf.cfg"
        cfg.write_text("# coarser grid\nn_grid = 500\nx_max = 30\n")
        code, out = run(capsys, "--config", str(cfg), "solve")
        d = json.loads(out)
        assert code == 0 and d["params"]["x_max"] == 30 and d["params"]["n_grid"] == 500

    def test_verify(self, capsys):
        code, out = run(capsys, "verify")
        assert code == 0
        assert out.count("PASS") == len(out.strip().splitlines())


class TestExitCodes:
    def test_bad_charge(self, capsys):
        assert main(["correction", "--z", "0"]) == 2

    def test_bad_parameter(self, capsys):
        assert main(["solve", "--xmax", "-1"]) == 2

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("speed = 3\n")
        assert main(["--config", str(cfg), "solve"]) == 2

    def test_shooting_failure(self, capsys, tmp_path):
        cfg = tmp_path / "bracket.cfg"
        cfg.write_text("slope_bracket = -3, -2.5\n")
        assert main(["--config", str(cfg), "solve"]) == 1

    def test_argparse_usage(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_console_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "tfatom.cli", "sweep", "--z", "1"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0 and proc.stdout.startswith("Z,")
