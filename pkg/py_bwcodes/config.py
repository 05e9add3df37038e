"""Configuration discovery and loading for py_bwcodes."""

import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .defaults import get_default_config
from .exceptions import ValidationError
from .utils import get_common_config_locations, walk_up_find_file


class ConfigManager:
    """Manages configuration discovery and loading."""

    CONFIG_FILENAME = "bwcodes.yaml"
    ENV_VAR = "BWCODES_CONFIG"
    SECTIONS = ("logger", "search", "bounds", "tables")

    def __init__(self):
        self._config: Optional[Dict[str, Any]] = None
        self._config_path: Optional[Path] = None

    def discover_config(self) -> Optional[Path]:
        """
        Discover bwcodes.yaml using multi-level fallback strategy.

        Priority:
        1. BWCODES_CONFIG environment variable
        2. Walk up directory tree from the current directory
        3. Common conventional locations

        Returns:
            Path to configuration file, or None to use built-in defaults
        """
        env_config = os.environ.get(self.ENV_VAR)
        if env_config:
            path = Path(env_config)
            if path.exists():
                return path
            raise FileNotFoundError(f"{self.ENV_VAR} points to non-existent file: {env_config}")

        walked_config = walk_up_find_file(self.CONFIG_FILENAME)
        if walked_config:
            return walked_config

        for location in get_common_config_locations(self.CONFIG_FILENAME):
            if location.exists():
                return location

        return None

    def load_config(self, config_path: Optional[Path] = None) -> Dict[str, Any]:
        """
        Load configuration from YAML and merge it over the defaults.

        Args:
            config_path: Optional path to config file. If None, auto-discover.

        Returns:
            Configuration dictionary with every known section present
        """
        if config_path is None:
            config_path = self.discover_config()

        self._config_path = config_path
        user_config: Dict[str, Any] = {}

        if config_path is not None:
            with open(config_path, "r") as f:
                try:
                    user_config = yaml.safe_load(f) or {}
                except yaml.YAMLError as exc:
                    raise ValidationError(f"{config_path}: invalid YAML: {exc}") from exc
            if not isinstance(user_config, dict):
                raise ValidationError(f"{config_path}: top level must be a mapping")

        self._config = merge_config(get_default_config(), user_config)
        return self._config

    def get_config(self) -> Dict[str, Any]:
        """Get loaded configuration, loading it on first use."""
        if self._config is None:
            self.load_config()
        return self._config

    def get_config_path(self) -> Optional[Path]:
        """Path of the loaded configuration file, None for built-in defaults."""
        return self._config_path

    def get_section(self, name: str) -> Dict[str, Any]:
        """Return one configuration section with defaults applied."""
        return self.get_config().get(name, {})

    def get_logger_config(self) -> Dict[str, Any]:
        return self.get_section("logger")


def merge_config(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Merge user values over defaults; None leaves the default in place."""
    result = dict(defaults)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = merge_config(result[key], value)
        elif value is not None or key not in result:
            result[key] = value
    return result


_config_manager = ConfigManager()


def get_config_manager() -> ConfigManager:
    """Get global configuration manager instance."""
    return _config_manager
