"""
Configuration module for the OFDM code toolkit.

This package contains environment-driven settings and the run
configuration records used by the batch commands.
"""

from .settings import Settings, settings
from .run_config import (
    OutputFormat,
    RunConfig,
    PRESETS,
    QUICK_RUN,
    THOROUGH_RUN,
    get_default_run_config,
    get_quick_run_config,
    get_thorough_run_config,
)

__all__ = [
    "Settings",
    "settings",
    "OutputFormat",
    "RunConfig",
    "PRESETS",
    "QUICK_RUN",
    "THOROUGH_RUN",
    "get_default_run_config",
    "get_quick_run_config",
    "get_thorough_run_config",
]
