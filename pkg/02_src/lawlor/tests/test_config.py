"""
Tests for solver configuration and logging setup.
"""
import logging

import pytest

from lawlor.config import (
    DEFAULT_ATOL,
    ConfigError,
    SolverSettings,
    default_settings,
    get_solver_config,
    setup_logging,
)


class TestGetSolverConfig:
    """Tests for environment-derived configuration."""

    def test_defaults(self, monkeypatch):
        """Without env variables the defaults apply."""
        for name in ("CONE_CERTIFY_TOL", "CONE_CERTIFY_JOBS", "CONE_CERTIFY_LOG_DIR"):
            monkeypatch.delenv(name, raising=False)
        config = get_solver_config()
        assert config == {"atol": DEFAULT_ATOL, "jobs": 1, "log_dir": None}

    def test_tighter_tolerance_applied(self, monkeypatch):
        """A tighter CONE_CERTIFY_TOL is used."""
        monkeypatch.setenv("CONE_CERTIFY_TOL", "1e-12")
        assert get_solver_config()["atol"] == 1e-12
        assert default_settings().atol == 1e-12

    def test_looser_tolerance_ignored(self, monkeypatch, caplog):
        """A looser CONE_CERTIFY_TOL is ignored with a warning."""
        monkeypatch.setenv("CONE_CERTIFY_TOL", "1e-6")
        with caplog.at_level(logging.WARNING, logger="lawlor.config"):
            assert get_solver_config()["atol"] == DEFAULT_ATOL
        assert "Ignoring CONE_CERTIFY_TOL" in caplog.text

    def test_malformed_values(self, monkeypatch):
        """Unparseable values raise ConfigError."""
        monkeypatch.setenv("CONE_CERTIFY_TOL", "tight")
        with pytest.raises(ConfigError):
            get_solver_config()
        monkeypatch.setenv("CONE_CERTIFY_TOL", "1e-11")
        monkeypatch.setenv("CONE_CERTIFY_JOBS", "many")
        with pytest.raises(ConfigError):
            get_solver_config()

    def test_jobs_and_log_dir(self, monkeypatch, tmp_path):
        """CONE_CERTIFY_JOBS and CONE_CERTIFY_LOG_DIR are read."""
        monkeypatch.delenv("CONE_CERTIFY_TOL", raising=False)
        monkeypatch.setenv("CONE_CERTIFY_JOBS", "4")
        monkeypatch.setenv("CONE_CERTIFY_LOG_DIR", str(tmp_path))
        config = get_solver_config()
        assert config["jobs"] == 4
        assert config["log_dir"] == str(tmp_path)


class TestSolverSettings:
    """Tests for SolverSettings."""

    def test_halved(self):
        """halved() halves the step tolerances only."""
        settings = SolverSettings()
        half = settings.halved()
        assert half.atol == settings.atol / 2
        assert half.max_step == settings.max_step / 2
        assert half.event_tol == settings.event_tol / 2
        assert half.padding == settings.padding

    def test_with_tolerance_tightens(self):
        """with_tolerance accepts tighter values."""
        assert SolverSettings().with_tolerance(1e-12).atol == 1e-12

    @pytest.mark.parametrize("atol", [1e-8, 0.0, -1.0])
    def test_with_tolerance_rejects_loosening(self, atol):
        """Looser or non-positive tolerances raise ConfigError."""
        with pytest.raises(ConfigError):
            SolverSettings().with_tolerance(atol)

    def test_hashable(self):
        """Settings can key caches."""
        assert hash(SolverSettings()) == hash(SolverSettings())


class TestSetupLogging:
    """Tests for setup_logging."""

    def test_file_handler_attached_once(self, tmp_path):
        """One shared FileHandler lands on every package logger, without duplicates."""
        log_file = tmp_path / "logs" / "run.log"
        names = ("lawlor", "isoparametric", "products", "certifier", "cli")
        saved = {name: list(logging.getLogger(name).handlers) for name in names}
        for name in names:
            logging.getLogger(name).handlers = []
        try:
            setup_logging(str(log_file), level=logging.DEBUG)
            setup_logging(str(log_file), level=logging.DEBUG)
            handlers = {id(h) for name in names for h in logging.getLogger(name).handlers}
            assert len(handlers) == 1
            assert all(len(logging.getLogger(name).handlers) == 1 for name in names)
            logging.getLogger("lawlor.test").info("hello")
            assert "lawlor.test - INFO - hello" in log_file.read_text(encoding="utf-8")
        finally:
            for name in names:
                for handler in logging.getLogger(name).handlers:
                    handler.close()
                logging.getLogger(name).handlers = saved[name]
