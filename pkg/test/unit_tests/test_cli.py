import csv
import io
import json
import math

import numpy as np
import pytest

from filesystem import CONFIG_KEYS, ConfigFileReader, ResultWriter, to_plain
from main import main
from user_interface import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, CLIManager
from user_interface.components import CommandResult, ConsoleView, GridSpec, RunConfig, SweepSpec
from user_interface.components.controllers import PhaseDiagramController
from utilities import ConfigurationError, ModelParams, PhaseRegion, format_elapsed_time


@pytest.fixture
def manager() -> CLIManager:
    return CLIManager(ConsoleView(io.StringIO(), io.StringIO()))


def read_csv(path) -> list[dict]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def read_json(path) -> dict:
    with open(path) as f:
        return json.load(f)


class TestCommands:
    def test_single_point_phase_diagram(self, manager, tmp_path):
        code = manager.run(["phase-diagram", "--delta", "0.5", "--pump", "1", "--out", str(tmp_path)])
        assert code == EXIT_OK
        rows = read_csv(tmp_path / "phase-diagram_stationary.csv")
        assert sum(row["kind"] == "maximum" for row in rows) == 4
        manifest = read_json(tmp_path / "phase-diagram_manifest.json")
        assert manifest["summary"]["region"] == "FourMaxima"
        assert manifest["config"]["params"]["delta"] == 0.5
        assert manifest["files"] == ["phase-diagram_stationary.csv"]
        assert "hermitian" in manifest["config"]["tolerances"]

    def test_swept_phase_diagram_as_json(self, manager, tmp_path):
        code = manager.run(["phase-diagram", "--sweep", "pump:0.5:1:2", "--sweep", "delta:-1:2:3",
                            "--format", "json", "--out", str(tmp_path)])
        assert code == EXIT_OK
        tables = read_json(tmp_path / "phase-diagram.json")
        assert len(tables["phase_diagram"]) == 6
        assert len(tables["thresholds"]) == 2
        # NaN amplitudes are stored as null
        assert any(row["alpha_plus"] is None for row in tables["phase_diagram"])

    def test_spectrum_levels(self, manager, tmp_path):
        code = manager.run(["spectrum", "--delta", "1", "--pump", "1", "--dim", "30", "--levels", "4",
                            "--out", str(tmp_path)])
        assert code == EXIT_OK
        rows = read_csv(tmp_path / "spectrum_levels.csv")
        assert [row["level"] for row in rows] == ["0", "1", "2", "3"]
        assert float(rows[0]["gap"]) == 0.0
        assert read_json(tmp_path / "spectrum_manifest.json")["solver"] == "Sector-Blocked Eigensolver"

    def test_main_returns_exit_code(self, tmp_path):
        assert main(["phase-diagram", "--delta", "2", "--out", str(tmp_path)]) == EXIT_OK


class TestExitCodes:
    def test_malformed_sweep(self, manager, tmp_path):
        out = tmp_path / "never"
        assert manager.run(["spectrum", "--sweep", "pump:1:2", "--out", str(out)]) == EXIT_CONFIG
        assert not out.exists()

    def test_unknown_command(self, manager):
        assert manager.run(["anneal"]) == EXIT_CONFIG

    def test_negative_pump(self, manager, tmp_path):
        assert manager.run(["phase-diagram", "--pump", "-1", "--out", str(tmp_path)]) == EXIT_CONFIG

    def test_steady_state_without_loss(self, manager, tmp_path):
        assert manager.run(["steady", "--delta", "1", "--pump", "1", "--out", str(tmp_path)]) == EXIT_CONFIG

    def test_crossings_need_a_pump_sweep(self, manager, tmp_path):
        code = manager.run(["spectrum", "--sweep", "delta:0:1:3", "--crossings", "--dim", "20",
                            "--out", str(tmp_path)])
        assert code == EXIT_CONFIG

    def test_numerical_failure(self, tmp_path):
        errors = io.StringIO()
        manager = CLIManager(ConsoleView(io.StringIO(), errors))
        code = manager.run(["evolve", "--mode", "cat-decay", "--delta", "3", "--pump", "1", "--kappa", "0.1",
                            "--dim", "20", "--out", str(tmp_path / "never")])
        assert code == EXIT_NUMERICAL
        assert "NoFiniteStationaryPoint" in errors.getvalue()
        assert not (tmp_path / "never").exists()

    def test_output_path_is_a_file(self, manager, tmp_path):
        out = tmp_path / "results"
        out.write_text("keep me")
        assert manager.run(["phase-diagram", "--delta", "2", "--out", str(out)]) == EXIT_CONFIG
        assert out.read_text() == "keep me"

    def test_log_file_in_missing_directory(self, manager, tmp_path):
        log_file = tmp_path / "missing" / "run.log"
        code = manager.run(["phase-diagram", "--delta", "2", "--log-file", str(log_file),
                            "--out", str(tmp_path / "never")])
        assert code == EXIT_CONFIG
        assert not (tmp_path / "never").exists()

    @pytest.mark.parametrize("error", [ValueError("bad grid"), np.linalg.LinAlgError("singular matrix")])
    def test_plain_numerical_errors(self, tmp_path, monkeypatch, error):
        def fail(self, config):
            raise error

        monkeypatch.setattr(PhaseDiagramController, "run", fail)
        errors = io.StringIO()
        manager = CLIManager(ConsoleView(io.StringIO(), errors))
        assert manager.run(["phase-diagram", "--delta", "2", "--out", str(tmp_path / "never")]) == EXIT_NUMERICAL
        assert type(error).__name__ in errors.getvalue()
        assert not (tmp_path / "never").exists()

    def test_failed_write_leaves_no_files(self, manager, tmp_path, monkeypatch):
        write_csv = ResultWriter._write_csv
        calls = []

        def fail_second(path, rows):
            calls.append(path)
            if len(calls) == 2:
                raise OSError("disk full")
            write_csv(path, rows)

        monkeypatch.setattr(ResultWriter, "_write_csv", staticmethod(fail_second))
        out = tmp_path / "out"
        code = manager.run(["phase-diagram", "--sweep", "pump:0.5:1:2", "--sweep", "delta:-1:2:3",
                            "--out", str(out)])
        assert code == EXIT_CONFIG
        assert len(calls) == 2
        assert list(out.iterdir()) == []


class TestConfigFile:
    def test_command_line_overrides_file(self, manager, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"delta": 2.0, "pump": 1.0, "log-level": "ERROR"}))
        out = tmp_path / "out"
        assert manager.run(["phase-diagram", "--config", str(config), "--delta", "0.5", "--out", str(out)]) == EXIT_OK
        manifest = read_json(out / "phase-diagram_manifest.json")
        assert manifest["config"]["params"] == {"delta": 0.5, "pump": 1.0, "kappa": 0.0, "kappa_e": 0.0,
                                                "kerr": 1.0}

    def test_unknown_key(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"delta": 1.0, "temperature": 0.1}))
        with pytest.raises(ConfigurationError, match="temperature"):
            ConfigFileReader.read_file(str(config))

    def test_non_object_and_missing_files(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text("[1, 2]")
        with pytest.raises(ConfigurationError):
            ConfigFileReader.read_file(str(config))
        with pytest.raises(ConfigurationError):
            ConfigFileReader.read_file(str(tmp_path / "missing.json"))

    def test_single_sweep_string(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"sweep": "pump:0:1:5", "ramp-time": 4.0}))
        values = ConfigFileReader.read_file(str(config))
        assert values == {"sweep": ["pump:0:1:5"], "ramp_time": 4.0}
        assert set(values) <= CONFIG_KEYS


class TestModels:
    def test_sweep_parsing(self):
        sweep = SweepSpec.parse("delta:-1:1:5")
        assert sweep == SweepSpec("delta", -1.0, 1.0, 5)
        assert list(sweep.values()) == [-1.0, -0.5, 0.0, 0.5, 1.0]

    @pytest.mark.parametrize("text", ["pump:0:1", "temperature:0:1:3", "pump:a:1:3", "pump:0:1:0"])
    def test_malformed_sweeps(self, text):
        with pytest.raises(ConfigurationError):
            SweepSpec.parse(text)

    def test_grid_parsing(self):
        assert GridSpec.parse("3:2:41") == GridSpec(3.0, 2.0, 41)
        with pytest.raises(ConfigurationError):
            GridSpec.parse("3:2:2")

    def test_duplicate_sweep_variable(self):
        sweeps = (SweepSpec.parse("pump:0:1:3"), SweepSpec.parse("pump:1:2:3"))
        with pytest.raises(ConfigurationError):
            RunConfig("spectrum", ModelParams(delta=0.0, pump=1.0), sweeps=sweeps)

    def test_run_config_rejects_bad_values(self):
        p = ModelParams(delta=0.0, pump=1.0)
        with pytest.raises(ConfigurationError):
            RunConfig("anneal", p)
        with pytest.raises(ConfigurationError):
            RunConfig("spectrum", p, fmt="xlsx")
        with pytest.raises(ConfigurationError):
            RunConfig("spectrum", p, threads=0)


class TestOutput:
    def test_to_plain(self):
        value = {"nan": math.nan, "z": 1 + 2j, "n": np.int64(3), "flag": np.bool_(True),
                 "region": PhaseRegion.FOUR_MAXIMA, "array": np.array([0.5, np.inf])}
        assert to_plain(value) == {"nan": None, "z": {"re": 1.0, "im": 2.0}, "n": 3, "flag": True,
                                   "region": "FourMaxima", "array": [0.5, None]}

    def test_console_summary(self):
        stream = io.StringIO()
        result = CommandResult("spectrum", tables={"levels": [{"level": 0}]}, summary={"spread": 0.125},
                               solver_name="Dense Eigensolver")
        ConsoleView(stream).show_result(result)
        text = stream.getvalue()
        assert text.startswith("spectrum [Dense Eigensolver]")
        assert "spread  0.125" in text
        assert "table levels: 1 rows" in text

    def test_manifest_records_elapsed_time(self, manager, tmp_path):
        assert manager.run(["phase-diagram", "--delta", "2", "--out", str(tmp_path)]) == EXIT_OK
        manifest = read_json(tmp_path / "phase-diagram_manifest.json")
        assert manifest["elapsed"] == format_elapsed_time(manifest["time_ms"])
        assert not [path for path in tmp_path.iterdir() if path.name.startswith(".staging")]

    @pytest.mark.parametrize("elapsed_ms, text", [(0, "0 ms"), (850, "850 ms"), (12400, "12.4 s"),
                                                  (185000, "3 min 05 s")])
    def test_format_elapsed_time(self, elapsed_ms, text):
        assert format_elapsed_time(elapsed_ms) == text

    def test_negative_elapsed_time(self):
        with pytest.raises(ValueError):
            format_elapsed_time(-1)
