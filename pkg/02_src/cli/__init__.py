"""
Command-line frontend: `python -m cli <command>`.
"""
from .factor_parser import FactorParseError, parse_factor_list
from .main import main, run
from .run_config import ModelChoice, OutputFormat, RunConfig, build_parser, config_from_args

__all__ = [
    "FactorParseError",
    "parse_factor_list",
    "main",
    "run",
    "ModelChoice",
    "OutputFormat",
    "RunConfig",
    "build_parser",
    "config_from_args",
]
