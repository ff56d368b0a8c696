"""Unit tests for configuration loading and logging setup."""
import logging
import sys
from pathlib import Path

import pytest

# Add the parent directory to sys.path to import utils
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.config_utils import load_configuration, setup_logging
from utils.errors import EXIT_BAD_FLAGS, ConfigurationError

VARIABLES = ("DEBUG", "SYMPROD_MAX_N", "SYMPROD_WORKERS", "SYMPROD_DEFAULT_FORMAT")


@pytest.fixture
def clean_env(monkeypatch):
    for name in VARIABLES:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


class TestConfiguration:
    """Test configuration loading from the environment."""

    def test_defaults(self, clean_env):
        """Test the values used when nothing is set."""
        config = load_configuration()
        assert config == {'debug': False, 'max_n': 64, 'workers': 1, 'default_format': "text"}

    def test_overrides(self, clean_env):
        """Test every variable is read."""
        clean_env.setenv("DEBUG", "yes")
        clean_env.setenv("SYMPROD_MAX_N", "12")
        clean_env.setenv("SYMPROD_WORKERS", "4")
        clean_env.setenv("SYMPROD_DEFAULT_FORMAT", "table-doc")
        config = load_configuration()
        assert config['debug'] is True
        assert config['max_n'] == 12
        assert config['workers'] == 4
        assert config['default_format'] == "table-doc"

    def test_blank_values_use_defaults(self, clean_env):
        """Test that empty variables fall back to the defaults."""
        clean_env.setenv("SYMPROD_MAX_N", " ")
        assert load_configuration()['max_n'] == 64

    @pytest.mark.parametrize(
        "name, value",
        [
            ("SYMPROD_MAX_N", "many"),
            ("SYMPROD_MAX_N", "-1"),
            ("SYMPROD_WORKERS", "0"),
            ("SYMPROD_DEFAULT_FORMAT", "html"),
        ],
    )
    def test_invalid_values(self, clean_env, name, value):
        """Test that invalid values raise ConfigurationError with exit code 2."""
        clean_env.setenv(name, value)
        with pytest.raises(ConfigurationError) as excinfo:
            load_configuration()
        assert excinfo.value.exit_code == EXIT_BAD_FLAGS


class TestLogging:
    """Test logging setup."""

    def test_levels(self):
        """Test DEBUG and INFO levels on the root logger."""
        setup_logging(debug=True)
        assert logging.getLogger().level == logging.DEBUG
        setup_logging(debug=False)
        assert logging.getLogger().level == logging.INFO

    def test_logs_to_stderr(self, capsys):
        """Test that log records go to stderr, leaving stdout to results."""
        setup_logging(debug=False)
        logging.getLogger("symprod.test").info("diagnostic line")
        captured = capsys.readouterr()
        assert "diagnostic line" in captured.err
        assert "diagnostic line" not in captured.out
