"""Default YAML configuration for py_bwcodes."""

import copy
from typing import Any, Dict

DEFAULT_YAML_TEMPLATE = """# py_bwcodes configuration file
# Generated by `py_bwcodes config init` - modify as needed

logger:
  # Set to a path such as "{log_stem}.log" to keep a rotating log file.
  file: null
  level: "INFO"
  rotation: "50 MB"
  retention: "10 days"
  compression: "zip"
  format: "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"

  console:
    enabled: true
    level: "WARNING"
    colorize: true

search:
  enumeration_cap: 16777216
  sample_fraction: 0.1
  threshold: 100
  restarts: 1000
  coloring_bound: false
  greedy_coloring_bound: true
  jobs: 1

bounds:
  backfill_max_vertices: 2000
  backfill_time_limit: 60.0

tables:
  format: "csv"
"""

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "logger": {
        "file": None,
        "level": "INFO",
        "rotation": "50 MB",
        "retention": "10 days",
        "compression": "zip",
        "format": "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        "console": {"enabled": True, "level": "WARNING", "colorize": True},
    },
    "search": {
        "enumeration_cap": 1 << 24,
        "sample_fraction": 0.1,
        "threshold": 100,
        "restarts": 1000,
        "coloring_bound": False,
        "greedy_coloring_bound": True,
        "jobs": 1,
    },
    "bounds": {
        "backfill_max_vertices": 2000,
        "backfill_time_limit": 60.0,
    },
    "tables": {
        "format": "csv",
    },
}


def get_default_yaml(name: str = "py_bwcodes") -> str:
    """
    Get default YAML configuration.

    Args:
        name: Stem suggested for the optional log file

    Returns:
        Default YAML configuration string
    """
    return DEFAULT_YAML_TEMPLATE.replace("{log_stem}", name)


def get_default_config() -> Dict[str, Dict[str, Any]]:
    """Deep copy of the built-in defaults."""
    return copy.deepcopy(DEFAULT_CONFIG)
