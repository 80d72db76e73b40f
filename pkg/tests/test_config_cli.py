import numpy as np
import pytest

from rsmaris.cli import main
from rsmaris.config import ConfigError, load_config, parse_config, render_config
from rsmaris.harness import default_config


class TestConfigRoundTrip:
    def test_render_parse_identity(self):
        cfg = default_config()
        parsed = parse_config(render_config(cfg))
        assert parsed.geometry == cfg.geometry
        assert parsed.M == cfg.M and parsed.L == cfg.L
        assert parsed.power_sweep_dbm == cfg.power_sweep_dbm
        assert parsed.noise_dbm == cfg.noise_dbm
        assert parsed.schemes == cfg.schemes
        assert parsed.attacks == cfg.attacks
        assert parsed.trials == cfg.trials and parsed.seed == cfg.seed
        assert np.allclose(parsed.attack_weights, cfg.attack_weights)

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "exp.ini"
        path.write_text(render_config(default_config(trials=7, seed=42)))
        cfg = load_config(path)
        assert cfg.trials == 7 and cfg.seed == 42


class TestConfigErrors:
    def base_text(self):
        return render_config(default_config())

    def test_missing_section(self):
        text = self.base_text().replace("[csi]", "[csx]")
        with pytest.raises(ConfigError, match=r"\[csi\]"):
            parse_config(text)

    def test_missing_key(self):
        text = self.base_text().replace("seed = 1\n", "")
        with pytest.raises(ConfigError, match="seed"):
            parse_config(text)

    def test_bad_value_names_field(self):
        text = self.base_text().replace("antennas = 10", "antennas = many")
        with pytest.raises(ConfigError, match="antennas"):
            parse_config(text)

    def test_bad_weights_length(self):
        text = self.base_text().replace(
            "weights = 0.333333333333, 0.333333333333, 0.333333333333",
            "weights = 0.5, 0.5",
        )
        with pytest.raises(ConfigError, match="weights"):
            parse_config(text)

    def test_inconsistent_dimensions(self):
        text = self.base_text().replace("antennas = 10", "antennas = 2")
        with pytest.raises(ConfigError):
            parse_config(text)

    def test_not_ini_at_all(self):
        with pytest.raises(ConfigError):
            parse_config("this is not an ini file")


def fast_ini(tmp_path, **overrides):
    cfg = default_config(
        L=12,
        trials=2,
        attack_iterations=30,
        power_sweep_dbm=(10.0, 30.0),
        **overrides,
    )
    path = tmp_path / "fast.ini"
    path.write_text(render_config(cfg))
    return path


class TestCli:
    def test_demo_config(self, tmp_path):
        out = tmp_path / "demo.ini"
        assert main(["demo-config", "--output", str(out)]) == 0
        cfg = load_config(out)
        assert cfg.M == 10 and cfg.L == 200

    def test_run_writes_csv(self, tmp_path, capsys):
        ini = fast_ini(tmp_path)
        out = tmp_path / "results.csv"
        code = main(["run", "--config", str(ini), "--output", str(out), "--threads", "1"])
        assert code == 0
        header = out.read_text().splitlines()[0]
        assert header.startswith("power_dbm,scheme,attack")
        assert "wrote" in capsys.readouterr().out

    def test_run_reproducible(self, tmp_path):
        ini = fast_ini(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["run", "--config", str(ini), "--output", str(out1), "--threads", "1"])
        main(["run", "--config", str(ini), "--output", str(out2), "--threads", "2"])
        assert out1.read_bytes() == out2.read_bytes()

    def test_cli_overrides(self, tmp_path):
        ini = fast_ini(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["run", "--config", str(ini), "--output", str(out1), "--seed", "9"])
        main(["run", "--config", str(ini), "--output", str(out2), "--seed", "10"])
        assert out1.read_bytes() != out2.read_bytes()

    def test_dump_trials(self, tmp_path):
        ini = fast_ini(tmp_path)
        out = tmp_path / "r.csv"
        dump = tmp_path / "dump.csv"
        main(
            [
                "run",
                "--config",
                str(ini),
                "--output",
                str(out),
                "--dump-trials",
                str(dump),
            ]
        )
        lines = dump.read_text().splitlines()
        assert lines[0].startswith("power_dbm,scheme,attack,trial")
        # 2 powers x 2 schemes x 4 attacks x 2 trials
        assert len(lines) == 1 + 2 * 2 * 4 * 2

    def test_sweep_tau(self, tmp_path):
        ini = fast_ini(tmp_path)
        out = tmp_path / "sweep.csv"
        code = main(
            [
                "sweep-tau",
                "--config",
                str(ini),
                "--output",
                str(out),
                "--tau-bs",
                "0.0",
                "--tau-attacker",
                "0.3",
                "0.9",
                "--threads",
                "1",
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        # RSMA only: 1 tau_bs x 2 tau x 2 powers x 4 attacks
        assert len(lines) == 1 + 2 * 2 * 4
        assert all(",rsma," in line for line in lines[1:])

    def test_bad_config_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.ini"
        bad.write_text("[geometry]\nbs = 0, 0\n")
        assert main(["run", "--config", str(bad)]) == 2
        assert "config error" in capsys.readouterr().err

    def test_unwritable_output_exit_code(self, tmp_path, capsys):
        ini = fast_ini(tmp_path)
        code = main(
            ["run", "--config", str(ini), "--output", str(tmp_path / "no" / "dir.csv")]
        )
        assert code == 3
        assert "i/o error" in capsys.readouterr().err

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit):
            main([])
