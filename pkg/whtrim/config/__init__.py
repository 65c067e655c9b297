"""
Configuration management for whtrim.

Handles loading and saving user configuration from ~/.config/whtrim/config.toml
"""

from whtrim.config.core import (
    STATE_BUDGET_ENV,
    Config,
    ConfigError,
    apply_env_overrides,
    get_config_dir,
    get_config_path,
    get_default_config,
    load_config,
    save_config,
    validate_config,
)

__all__ = [
    "STATE_BUDGET_ENV",
    "Config",
    "ConfigError",
    "apply_env_overrides",
    "get_config_dir",
    "get_config_path",
    "get_default_config",
    "load_config",
    "save_config",
    "validate_config",
]
