"""
Unit Tests for problem configuration loading and validation.
"""

import json
from pathlib import Path

import pytest
import yaml
from pydantic import ValidationError

from shockwkb.config import ProblemConfig, load_config, resolve_output_dir, validate_config_file
from shockwkb.exceptions import ConfigurationError

CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"


def write_yaml(tmp_path: Path, data, name: str = "problem.yaml") -> Path:
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


class TestLoadConfig:
    """Test reading problem files."""

    def test_load_yaml(self, tmp_path, constant_data):
        config = load_config(str(write_yaml(tmp_path, constant_data)))
        assert config.coefficients.a == ["1", "0"]
        assert config.epsilon == [0.1, 0.05, 0.025]
        assert config.refsolve.advection == "upwind"

    def test_json_is_accepted(self, tmp_path, constant_data):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(constant_data), encoding="utf-8")
        assert load_config(str(path)).time.t1 == 1.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            load_config(str(tmp_path / "absent.yaml"))

    def test_non_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="must be a mapping"):
            load_config(str(path))

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("coefficients: [a, b\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Invalid YAML"):
            load_config(str(path))

    def test_validation_failure_wrapped(self, tmp_path, constant_data):
        constant_data["front"]["rho"] = 0.0
        with pytest.raises(ConfigurationError, match="rho must be finite and nonzero"):
            load_config(str(write_yaml(tmp_path, constant_data)))

    def test_validate_config_file(self, tmp_path, constant_data):
        assert validate_config_file(str(write_yaml(tmp_path, constant_data)))

    @pytest.mark.parametrize("name", ["example_config.yaml", "constant_coefficients.yaml"])
    def test_shipped_configs_load(self, name):
        config = load_config(str(CONFIG_DIR / name))
        assert config.front.rho == 1.0


class TestProblemConfig:
    """Test model validation rules."""

    def test_unknown_key_rejected(self, constant_data):
        constant_data["viscosity"] = 0.1
        with pytest.raises(ValidationError):
            ProblemConfig(**constant_data)

    def test_unknown_nested_key_rejected(self, constant_data):
        constant_data["front"]["speed"] = 1.0
        with pytest.raises(ValidationError):
            ProblemConfig(**constant_data)

    @pytest.mark.parametrize("ladder", [[0.1, 0.2], [0.1, 0.1], [0.1, 0.0], []])
    def test_epsilon_ladder(self, constant_data, ladder):
        constant_data["epsilon"] = ladder
        with pytest.raises(ValidationError):
            ProblemConfig(**constant_data)

    @pytest.mark.parametrize("ladder", [[0.01, 0.02], [-0.01, -0.02], []])
    def test_tail_epsilon_ladder(self, constant_data, ladder):
        constant_data["tail_epsilon"] = ladder
        with pytest.raises(ValidationError):
            ProblemConfig(**constant_data)

    def test_ladder_for_region(self, constant_data):
        assert ProblemConfig(**constant_data).ladder_for("right") == [0.1, 0.05, 0.025]
        constant_data["tail_epsilon"] = [0.01, 0.005, 0.0025]
        config = ProblemConfig(**constant_data)
        assert config.ladder_for("global") == [0.1, 0.05, 0.025]
        assert config.ladder_for("right") == [0.01, 0.005, 0.0025]
        assert config.ladder_for("left") == [0.01, 0.005, 0.0025]

    def test_start_time_must_be_zero(self, constant_data):
        constant_data["time"]["t0"] = 0.5
        with pytest.raises(ValidationError, match="t0 must be 0"):
            ProblemConfig(**constant_data)

    def test_non_finite_c1(self, constant_data):
        constant_data["c1"] = float("nan")
        with pytest.raises(ValidationError, match="c1 must be finite"):
            ProblemConfig(**constant_data)

    def test_unparsable_coefficient(self, constant_data):
        constant_data["coefficients"]["a"] = ["1+", "0"]
        with pytest.raises(ValidationError, match="cannot parse '1\\+'"):
            ProblemConfig(**constant_data)

    def test_unknown_identifier_in_profile(self, constant_data):
        constant_data["initial_profile"] = "tanh(y)"
        with pytest.raises(ValidationError, match="Unknown identifier 'y'"):
            ProblemConfig(**constant_data)

    def test_expressions_background_needs_terms(self, constant_data):
        constant_data["background"] = {"type": "expressions"}
        with pytest.raises(ValidationError, match="needs at least u_0"):
            ProblemConfig(**constant_data)

    def test_zero_background_takes_no_terms(self, constant_data):
        constant_data["background"] = {"type": "zero", "u": ["x"]}
        with pytest.raises(ValidationError, match="takes no expressions"):
            ProblemConfig(**constant_data)

    def test_grid_range(self, constant_data):
        constant_data["grid"]["x_max"] = -5.0
        with pytest.raises(ValidationError, match="must be less than"):
            ProblemConfig(**constant_data)

    @pytest.mark.parametrize("key", ["nx", "nt"])
    def test_zero_sized_grid(self, constant_data, key):
        constant_data["grid"][key] = 0
        with pytest.raises(ValidationError):
            ProblemConfig(**constant_data)

    def test_to_problem(self, constant_config):
        problem = constant_config.to_problem()
        assert problem.epsilon_ladder == (0.1, 0.05, 0.025)
        assert problem.window.T == 1.0
        assert problem.background.is_zero

    def test_expressions_background(self, constant_data):
        constant_data["background"] = {"type": "expressions", "u": ["0.5", "x"]}
        background = ProblemConfig(**constant_data).to_problem().background
        assert not background.is_zero
        assert background.term(1, required=True) is not None

    def test_figure_grid(self, constant_config):
        grid = constant_config.figure_grid()
        assert grid.xs.shape == (121,)
        assert grid.ts[0] == 0.0 and grid.ts[-1] == 1.0


class TestOutputDir:
    """Test output directory resolution."""

    def test_cli_value_wins(self, monkeypatch):
        monkeypatch.setenv("SHOCKWKB_OUT_DIR", "/tmp/env-out")
        assert resolve_output_dir("results") == Path("results")

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("SHOCKWKB_OUT_DIR", "/tmp/env-out")
        assert resolve_output_dir() == Path("/tmp/env-out")

    def test_default(self, monkeypatch):
        monkeypatch.delenv("SHOCKWKB_OUT_DIR", raising=False)
        assert resolve_output_dir() == Path("output")
