import pytest

from mertens_audit.config import default_block_size, default_tolerance, log_level
from mertens_audit.errors import ConfigError


def test_log_level_accepts_names_in_any_case(monkeypatch):
    monkeypatch.setenv("MERTENS_LOG_LEVEL", "debug")
    assert log_level() == "DEBUG"


def test_log_level_rejects_unknown_names(monkeypatch):
    monkeypatch.setenv("MERTENS_LOG_LEVEL", "chatty")
    with pytest.raises(ConfigError):
        log_level()


def test_defaults_without_environment(monkeypatch):
    monkeypatch.delenv("MERTENS_BLOCK_SIZE", raising=False)
    monkeypatch.delenv("MERTENS_TOLERANCE", raising=False)
    assert default_block_size() == 1 << 22
    assert default_tolerance() == 1e-8


@pytest.mark.parametrize("raw", ["zero", "0", "-4"])
def test_block_size_must_be_a_positive_integer(monkeypatch, raw):
    monkeypatch.setenv("MERTENS_BLOCK_SIZE", raw)
    with pytest.raises(ConfigError):
        default_block_size()
