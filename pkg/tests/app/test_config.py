"""
Settings loading
"""

from pathlib import Path

import pytest

from app.config import load_settings, parse_config_file
from app.core.exceptions import ConfigurationException, ImageIOException


def test_defaults():
    settings = load_settings()
    assert settings.method == 1
    assert settings.alpha_s == settings.alpha_l == "auto"
    assert (settings.beta_layer1, settings.beta_layer2, settings.iterations) == (1.8, 1.8, 2)
    assert (settings.k, settings.beta_u, settings.open_radius) == (3, 1.0, 1)
    assert settings.out == Path("out")


def test_config_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("# comment\nmethod = 2\nbeta-u = 0.25   # trailing\nalpha_l = 60\n\n")
    settings = load_settings(path)
    assert settings.method == 2
    assert settings.beta_u == 0.25
    assert settings.alpha_l == 60


def test_flags_override_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("k = 5\n")
    assert load_settings(path, k=7).k == 7
    assert load_settings(path, k=None).k == 5


def test_unknown_key(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("gamma = 1\n")
    with pytest.raises(ConfigurationException):
        load_settings(path)


def test_line_without_equals(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("method 2\n")
    with pytest.raises(ConfigurationException):
        parse_config_file(path)


def test_missing_file(tmp_path):
    with pytest.raises(ImageIOException):
        load_settings(tmp_path / "absent.conf")


@pytest.mark.parametrize("overrides", [
    {"beta_layer1": -0.5},
    {"iterations": 0},
    {"k": 0},
    {"method": 3},
    {"open_radius": 0},
    {"alpha_s": 300},
    {"alpha_l": "bright"},
    {"log_level": "verbose"},
])
def test_invalid_values(overrides):
    with pytest.raises(ConfigurationException) as exc:
        load_settings(None, **overrides)
    assert exc.value.exit_code == 1


def test_threshold_strings_parsed():
    settings = load_settings(None, alpha_s=" 120 ", alpha_l="AUTO")
    assert settings.alpha_s == 120
    assert settings.alpha_l == "auto"


def test_with_overrides_is_validated():
    settings = load_settings()
    assert settings.with_overrides(method=2).method == 2
    with pytest.raises(ConfigurationException):
        settings.with_overrides(k=-1)
