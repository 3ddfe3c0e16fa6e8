"""环境变量配置"""

import pytest

from infra.config import AppConfig, Config, Environment, NumericsConfig


def test_load_reads_environment(monkeypatch):
    monkeypatch.setenv("ADSCAUSAL_GRID", "65")
    monkeypatch.setenv("ADSCAUSAL_TOL", "1e-8")
    monkeypatch.setenv("ADSCAUSAL_MAX_N", "6")
    monkeypatch.setenv("APP_ENV", "production")
    monkeypatch.setenv("APP_DEBUG", "false")
    cfg = Config.load()
    assert cfg.numerics.grid == 65
    assert cfg.numerics.tol == 1e-8
    assert cfg.numerics.max_n == 6
    assert cfg.app.env is Environment.PRODUCTION
    assert cfg.validate() == []


def test_unknown_environment_falls_back(monkeypatch):
    monkeypatch.setenv("APP_ENV", "staging")
    assert Config.load().app.env is Environment.DEVELOPMENT


def test_validate_warns_on_loose_settings(monkeypatch):
    monkeypatch.setenv("ADSCAUSAL_GRID", "9")
    monkeypatch.setenv("ADSCAUSAL_TOL", "1e-3")
    monkeypatch.setenv("APP_ENV", "production")
    monkeypatch.setenv("APP_DEBUG", "true")
    warnings = Config.load().validate()
    assert len(warnings) == 3


@pytest.mark.parametrize(
    "kwargs",
    [{"grid": 64}, {"grid": 1}, {"tol": 0.0}, {"horizon_tol": -1.0}, {"completions": -1}, {"max_n": 1}],
)
def test_numerics_rejects_bad_values(kwargs):
    with pytest.raises(ValueError):
        NumericsConfig(**kwargs)


def test_app_rejects_bad_values():
    with pytest.raises(ValueError):
        AppConfig(port=0)
    with pytest.raises(ValueError):
        AppConfig(log_level="LOUD")


def test_to_dict_sections(monkeypatch):
    monkeypatch.delenv("ADSCAUSAL_GRID", raising=False)
    data = Config.load().to_dict()
    assert set(data) == {"numerics", "app", "log_file"}
    assert data["numerics"]["grid"] == 257
