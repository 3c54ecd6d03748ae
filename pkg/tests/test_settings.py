import logging

from settings import DEFAULTS, SettingsManager


def test_defaults():
    s = SettingsManager(environ={})
    assert s.get("steps") == 10
    assert s.get("edge_probability") == "1/2"
    assert s.as_dict() == DEFAULTS


def test_environment_overrides_default():
    s = SettingsManager(environ={"THRESHOLD_AM_SEED": "42", "THRESHOLD_AM_LOG_LEVEL": " debug "})
    assert s.get("seed") == 42
    assert s.get("log_level") == "DEBUG"


def test_only_known_keys_read_the_environment():
    s = SettingsManager(environ={"THRESHOLD_AM_STEPS": "3"})
    assert s.get("steps") == 10


def test_explicit_value_wins():
    s = SettingsManager(environ={"THRESHOLD_AM_WORKERS": "2"})
    s.set("workers", 8)
    assert s.get("workers") == 8


def test_malformed_environment_value(caplog):
    s = SettingsManager(environ={"THRESHOLD_AM_WORKERS": "many"})
    with caplog.at_level(logging.WARNING, logger="settings"):
        assert s.get("workers") == 4
    assert "THRESHOLD_AM_WORKERS" in caplog.text


def test_unknown_key_uses_caller_default():
    assert SettingsManager(environ={}).get("colour", "red") == "red"
