"""Tests for qgsmooth.config module."""

from __future__ import annotations

import hashlib
from pathlib import Path

import pytest

from qgsmooth.config import VerifyConfig, load_config


def _write(tmp_path: Path, body: str, name: str = "qgsmooth.toml") -> Path:
    path = tmp_path / name
    path.write_text(body, encoding="utf-8")
    return path


@pytest.fixture
def isolated_home(tmp_path, monkeypatch):
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.chdir(tmp_path)
    return home


class TestLoadConfig:
    def test_defaults_without_file(self, isolated_home):
        cfg = load_config()
        assert cfg == VerifyConfig()
        assert cfg.config_path == ""

    def test_explicit_file(self, tmp_path):
        path = _write(tmp_path, "[verify]\nkk_max_r = 50\nseed = 7\n", name="custom.toml")
        cfg = load_config(path)
        assert cfg.kk_max_r == 50
        assert cfg.seed == 7
        assert cfg.markov_max_entry == 1000
        assert cfg.config_path == str(path.resolve())
        assert cfg.config_hash == hashlib.sha256(path.read_bytes()).hexdigest()

    def test_working_directory_file(self, isolated_home, tmp_path):
        _write(tmp_path, "[verify]\nmarkov_max_entry = 100\n")
        assert load_config().markov_max_entry == 100

    def test_user_config_file(self, isolated_home):
        user_dir = isolated_home / ".config" / "qgsmooth"
        user_dir.mkdir(parents=True)
        _write(user_dir, "[verify]\nwpp_samples = 3\n", name="config.toml")
        assert load_config().wpp_samples == 3

    def test_missing_explicit_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "nope.toml")

    def test_empty_file_gives_defaults(self, tmp_path):
        cfg = load_config(_write(tmp_path, ""))
        assert cfg.kk_max_r == VerifyConfig().kk_max_r

    def test_zero_seed_allowed(self, tmp_path):
        assert load_config(_write(tmp_path, "[verify]\nseed = 0\n")).seed == 0

    @pytest.mark.parametrize(
        "body",
        [
            "[verify]\nmax_everything = 3\n",
            "[verify]\nkk_max_r = \"ten\"\n",
            "[verify]\nkk_max_r = true\n",
            "[verify]\nkk_max_r = 0\n",
            "[verify]\nconfig_path = \"x\"\n",
            "verify = 3\n",
        ],
    )
    def test_rejects_bad_values(self, tmp_path, body):
        with pytest.raises(ValueError):
            load_config(_write(tmp_path, body))


class TestOverrides:
    def test_max_r_clamps_small_limits(self):
        cfg = VerifyConfig().with_overrides(max_r=10)
        assert cfg.cfrac_max_r == 10
        assert cfg.kk_max_r == 10
        assert cfg.descent_max_r == 10
        assert cfg.oracle_max_r == 10
        assert cfg.smoothing_max_r == 10
        assert cfg.singularity_max_r == 10

    def test_max_r_does_not_raise_small_limits(self):
        cfg = VerifyConfig().with_overrides(max_r=5000)
        assert cfg.cfrac_max_r == 5000
        assert cfg.oracle_max_r == VerifyConfig().oracle_max_r
        assert cfg.smoothing_max_r == VerifyConfig().smoothing_max_r

    def test_max_s(self):
        cfg = VerifyConfig().with_overrides(max_s=3)
        assert cfg.smoothing_max_s == 3
        assert cfg.singularity_max_s == 3
        assert cfg.conservation_max_s == 3

    def test_entry_and_seed(self):
        cfg = VerifyConfig().with_overrides(max_entry=30, seed=11)
        assert cfg.markov_max_entry == 30
        assert cfg.seed == 11

    def test_none_keeps_everything(self):
        assert VerifyConfig().with_overrides() == VerifyConfig()
