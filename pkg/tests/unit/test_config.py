"""
Unit tests for JobConfig and load_config.
"""

import json

import pytest
from pydantic import ValidationError

from adictrop.core.exactnum import ValueGroup
from adictrop.errors import ConfigError
from adictrop.models.config import SEED_ENV, JobConfig, load_config


class TestJobConfig:
    """Tests for JobConfig validation."""

    def test_defaults(self):
        config = JobConfig()
        assert config.field == "Q"
        assert config.gamma == 1
        assert config.uniformizer == "t"
        assert config.output_format == "json"
        assert config.output_dir is None
        assert config.workers == 1
        assert config.degree_bound == 2
        assert not config.assume_complete

    @pytest.mark.parametrize("descriptor", ["F5", "F_5", "GF(5)"])
    def test_field_normalized(self, descriptor):
        assert JobConfig(field=descriptor).field == "F5"

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            JobConfig(field="F4")

    def test_unknown_key(self):
        with pytest.raises(ValidationError):
            JobConfig.model_validate({"gama": 2})

    @pytest.mark.parametrize(
        "key, value",
        [("gamma", 0), ("workers", 0), ("degree_bound", 1), ("output_format", "png")],
    )
    def test_out_of_range(self, key, value):
        with pytest.raises(ValidationError):
            JobConfig.model_validate({key: value})

    def test_uniformizer_must_be_identifier(self):
        assert JobConfig(uniformizer="p").uniformizer == "p"
        with pytest.raises(ValidationError):
            JobConfig(uniformizer="2t")

    def test_field_profile(self):
        profile = JobConfig(field="F3", gamma=2, uniformizer="p").field_profile()
        assert profile.residue.descriptor == "F3"
        assert profile.value_group == ValueGroup(2)
        assert profile.uniformizer == "p"

    def test_merged_ignores_none(self):
        config = JobConfig(gamma=3).merged(gamma=None, seed=5)
        assert config.gamma == 3
        assert config.seed == 5

    def test_merged_revalidates(self):
        with pytest.raises(ValidationError):
            JobConfig().merged(workers=0)


class TestConfigFile:
    """Tests for reading job files."""

    def test_from_file(self, tmp_path):
        path = tmp_path / "job.json"
        path.write_text(json.dumps({"field": "GF(7)", "gamma": 2, "seed": 11}))
        config = JobConfig.from_file(str(path))
        assert config.field == "F7"
        assert config.gamma == 2
        assert config.seed == 11

    def test_bad_json(self, tmp_path):
        path = tmp_path / "job.json"
        path.write_text("{gamma: 2")
        with pytest.raises(ConfigError) as info:
            JobConfig.from_file(str(path))
        assert info.value.code == "config_invalid"

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "job.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            JobConfig.from_file(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            JobConfig.from_file(str(tmp_path / "absent.json"))


class TestLoadConfig:
    """Tests for the layering of defaults, file, overrides and environment."""

    def test_overrides_win_over_file(self, tmp_path, monkeypatch):
        monkeypatch.delenv(SEED_ENV, raising=False)
        path = tmp_path / "job.json"
        path.write_text(json.dumps({"gamma": 2, "workers": 3}))
        config = load_config(str(path), gamma=4, workers=None)
        assert config.gamma == 4
        assert config.workers == 3

    def test_environment_seed_wins(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "42")
        assert load_config(seed=7).seed == 42

    def test_environment_seed_must_be_int(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "forty-two")
        with pytest.raises(ConfigError):
            load_config()

    def test_no_file(self, monkeypatch):
        monkeypatch.delenv(SEED_ENV, raising=False)
        assert load_config() == JobConfig()
