"""
Configuration for the Lawlor solver.

Loads environment variables for integrator tolerances and fan-out width.
Provides optional logging setup for standalone usage.
"""
import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    # python-dotenv not installed, use system env only
    pass

logger = logging.getLogger(__name__)

DEFAULT_ATOL = 1e-10
DEFAULT_MAX_STEP = 1e-3

PACKAGE_LOGGERS = ("lawlor", "isoparametric", "products", "certifier", "cli")


class ConfigError(Exception):
    """Raised when a configuration value is malformed or loosens a tolerance."""

    pass


@dataclass(frozen=True)
class SolverSettings:
    """
    Tolerances of the profile integrator.

    Frozen so that settings can key result caches and be shared between workers.
    """

    atol: float = DEFAULT_ATOL
    max_step: float = DEFAULT_MAX_STEP
    event_tol: float = 1e-12  # D = 0 location
    zero_tol: float = 1e-10  # |h| at the reported zero crossing
    start_t: float = 1e-4  # series start-up point
    residual_tol: float = 1e-8
    padding: float = 1e-7  # added to certified upper bounds (radians)

    def halved(self) -> "SolverSettings":
        """Settings with every step tolerance halved (convergence check)."""
        return replace(
            self,
            atol=self.atol / 2,
            max_step=self.max_step / 2,
            event_tol=self.event_tol / 2,
            zero_tol=self.zero_tol / 2,
        )

    def with_tolerance(self, atol: float) -> "SolverSettings":
        """
        Tighten the absolute tolerance.

        Raises:
            ConfigError: If atol is not positive or looser than the current value
        """
        if not atol > 0:
            raise ConfigError(f"Tolerance must be positive: got {atol}")
        if atol > self.atol:
            raise ConfigError(
                f"Tolerance override {atol:g} would loosen the integrator (current {self.atol:g})"
            )
        return replace(self, atol=atol)


def get_solver_config() -> Dict[str, Any]:
    """
    Get solver configuration from environment variables.

    Returns:
        Dict with keys:
        - atol: Integrator absolute tolerance (CONE_CERTIFY_TOL, tightening only, default 1e-10)
        - jobs: Default fan-out width (CONE_CERTIFY_JOBS, default 1)
        - log_dir: Directory for JSONL run logs (CONE_CERTIFY_LOG_DIR, default None)

    Raises:
        ConfigError: If a variable cannot be parsed

    Examples:
        >>> config = get_solver_config()
        >>> settings = default_settings()
    """
    atol = DEFAULT_ATOL
    raw_tol = os.getenv("CONE_CERTIFY_TOL")
    if raw_tol:
        try:
            requested = float(raw_tol)
        except ValueError as e:
            raise ConfigError(f"CONE_CERTIFY_TOL is not a number: {raw_tol!r}") from e
        if 0 < requested <= DEFAULT_ATOL:
            atol = requested
        else:
            logger.warning(
                f"Ignoring CONE_CERTIFY_TOL={raw_tol}: only values in (0, {DEFAULT_ATOL:g}] tighten the solver"
            )

    raw_jobs = os.getenv("CONE_CERTIFY_JOBS", "1")
    try:
        jobs = max(1, int(raw_jobs))
    except ValueError as e:
        raise ConfigError(f"CONE_CERTIFY_JOBS is not an integer: {raw_jobs!r}") from e

    return {
        "atol": atol,
        "jobs": jobs,
        "log_dir": os.getenv("CONE_CERTIFY_LOG_DIR") or None,
    }


def default_settings() -> SolverSettings:
    """SolverSettings with the environment tolerance applied."""
    return SolverSettings(atol=get_solver_config()["atol"])


def setup_logging(log_file: Optional[str] = None, level: int = logging.INFO) -> None:
    """
    Setup logging for the toolkit (optional, for standalone usage).

    Configures a FileHandler on the package loggers used by the CLI.

    Args:
        log_file: Path to log file (e.g., '04_logs/cone_certify.log').
                  If None, only the level is configured.
        level: Logging level (default: INFO)
    """
    handler: Optional[logging.Handler] = None
    if log_file:
        # Create directory if needed
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        handler = logging.FileHandler(log_file, encoding="utf-8")
        handler.setLevel(level)
        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        handler.setFormatter(formatter)

    for name in PACKAGE_LOGGERS:
        package_logger = logging.getLogger(name)
        package_logger.setLevel(level)

        # Avoid adding duplicate handlers
        if handler is not None and not package_logger.handlers:
            package_logger.addHandler(handler)

        # Ensure logger propagates to root logger
        package_logger.propagate = True
