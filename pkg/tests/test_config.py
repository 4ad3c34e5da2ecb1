"""
Unit tests for environment-driven settings.
"""

import os

import pytest

from kpcrystal.config import DEFAULT_SEARCH_CAP, Settings, get_settings, load_settings
from kpcrystal.errors import ConfigError, InvalidInputError


ENV_NAMES = ("KPCRYSTAL_MAX_NODES", "KPCRYSTAL_TIME_LIMIT_S", "KPCRYSTAL_SEARCH_CAP", "KPCRYSTAL_LOG_LEVEL")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """Run each test without KPCRYSTAL_* variables or a stray .env file."""
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    for name in ENV_NAMES:
        os.environ.pop(name, None)
    get_settings.cache_clear()


class TestLoadSettings:
    """Tests for reading settings."""

    def test_defaults(self):
        """Should fall back to the defaults."""
        assert load_settings() == Settings()
        assert load_settings().search_cap == DEFAULT_SEARCH_CAP

    def test_environment_overrides(self, monkeypatch):
        """Should read every variable."""
        monkeypatch.setenv("KPCRYSTAL_MAX_NODES", "500")
        monkeypatch.setenv("KPCRYSTAL_TIME_LIMIT_S", "2.5")
        monkeypatch.setenv("KPCRYSTAL_SEARCH_CAP", "1000")
        monkeypatch.setenv("KPCRYSTAL_LOG_LEVEL", "debug")

        assert load_settings() == Settings(max_nodes=500, time_limit_s=2.5, search_cap=1000, log_level="DEBUG")

    def test_dotenv_file(self, tmp_path):
        """Should pick up a .env file in the working directory."""
        (tmp_path / ".env").write_text("KPCRYSTAL_SEARCH_CAP=77\n", encoding="utf-8")

        assert load_settings().search_cap == 77

    @pytest.mark.parametrize("name,value", [
        ("KPCRYSTAL_MAX_NODES", "many"),
        ("KPCRYSTAL_MAX_NODES", "0"),
        ("KPCRYSTAL_TIME_LIMIT_S", "-1"),
        ("KPCRYSTAL_LOG_LEVEL", "LOUD"),
    ])
    def test_invalid_values(self, monkeypatch, name, value):
        """Should reject unparsable or non-positive values."""
        monkeypatch.setenv(name, value)
        with pytest.raises(ConfigError, match=name):
            load_settings()

    def test_config_error_is_input_error(self):
        """Should let callers catch config problems as input errors."""
        assert issubclass(ConfigError, InvalidInputError)

    def test_cached(self, monkeypatch):
        """Should read the environment once per process."""
        first = get_settings()
        monkeypatch.setenv("KPCRYSTAL_SEARCH_CAP", "5")

        assert get_settings() is first
