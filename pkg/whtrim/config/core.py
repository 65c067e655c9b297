"""
Core configuration management functionality.

Handles loading, saving, and validating whtrim configuration files.
"""

import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict

# Python 3.11+ has tomllib in stdlib, earlier versions need tomli
if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    try:
        import tomli as tomllib  # type: ignore
    except ImportError:
        tomllib = None  # type: ignore

# For writing TOML, we need tomli_w regardless of Python version
try:
    import tomli_w
except ImportError:  # pragma: no cover
    tomli_w = None  # type: ignore

STATE_BUDGET_ENV = "WHTRIM_STATE_BUDGET"
REPRESENTATIONS = ("factored", "explicit")


class ConfigError(Exception):
    """Configuration-related errors."""

    pass


@dataclass
class AutomataConfig:
    """Automaton construction limits."""

    state_budget: int = 5_000_000  # Largest automaton built before refusing


@dataclass
class LinalgConfig:
    """Iterative kernel tolerances and size limits."""

    power_tolerance: float = 1e-10
    power_max_iterations: int = 1_000_000
    norm_tolerance: float = 1e-10
    norm_max_iterations: int = 10_000
    kron_budget: int = 20_000  # Largest explicit Kronecker dimension


@dataclass
class JsrConfig:
    """Gripenberg branch-and-bound settings."""

    delta: float = 1e-3
    max_iterations: int = 100
    entry_budget: int = 1_000_000_000
    representation: str = "factored"
    workers: int = 1


@dataclass
class CLIConfig:
    """CLI behavior configuration."""

    verbose: bool = False  # Debug logging on stderr


@dataclass
class Config:
    """Complete whtrim configuration."""

    automata: AutomataConfig
    linalg: LinalgConfig
    jsr: JsrConfig
    cli: CLIConfig

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary for serialization."""
        return {
            "automata": asdict(self.automata),
            "linalg": asdict(self.linalg),
            "jsr": asdict(self.jsr),
            "cli": asdict(self.cli),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Config":
        """Create Config from dictionary."""
        automata = AutomataConfig(**data.get("automata", {}))
        linalg = LinalgConfig(**data.get("linalg", {}))
        jsr = JsrConfig(**data.get("jsr", {}))
        cli = CLIConfig(**data.get("cli", {}))
        return cls(automata=automata, linalg=linalg, jsr=jsr, cli=cli)


def get_config_dir() -> Path:
    """Get the configuration directory path."""
    if sys.platform == "win32":
        appdata = os.environ.get("APPDATA")
        if appdata:
            config_dir = Path(appdata) / "whtrim"
        else:
            config_dir = Path.home() / ".whtrim"
    else:
        xdg_config = os.environ.get("XDG_CONFIG_HOME")
        if xdg_config:
            config_dir = Path(xdg_config) / "whtrim"
        else:
            config_dir = Path.home() / ".config" / "whtrim"

    return config_dir


def get_config_path() -> Path:
    """Get the configuration file path."""
    return get_config_dir() / "config.toml"


def get_default_config() -> Config:
    """Get default configuration."""
    return Config(
        automata=AutomataConfig(),
        linalg=LinalgConfig(),
        jsr=JsrConfig(),
        cli=CLIConfig(),
    )


def validate_config(config: Config) -> None:
    """
    Check value ranges.

    Raises:
        ConfigError: On the first out-of-range value
    """
    if config.automata.state_budget < 1:
        raise ConfigError("state_budget must be >= 1")
    if not 0.0 < config.linalg.power_tolerance < 1.0:
        raise ConfigError("power_tolerance must be in (0, 1)")
    if not 0.0 < config.linalg.norm_tolerance < 1.0:
        raise ConfigError("norm_tolerance must be in (0, 1)")
    if config.linalg.power_max_iterations < 1 or config.linalg.norm_max_iterations < 1:
        raise ConfigError("Iteration caps must be >= 1")
    if config.linalg.kron_budget < 1:
        raise ConfigError("kron_budget must be >= 1")
    if config.jsr.delta <= 0.0:
        raise ConfigError("delta must be > 0")
    if config.jsr.max_iterations < 1:
        raise ConfigError("max_iterations must be >= 1")
    if config.jsr.entry_budget < 1:
        raise ConfigError("entry_budget must be >= 1")
    if config.jsr.representation not in REPRESENTATIONS:
        raise ConfigError(f"representation must be one of {', '.join(REPRESENTATIONS)}")
    if config.jsr.workers < 1:
        raise ConfigError("workers must be >= 1")


def apply_env_overrides(config: Config) -> Config:
    """
    Apply environment overrides (currently WHTRIM_STATE_BUDGET).

    Raises:
        ConfigError: If the override is not a positive integer
    """
    raw = os.environ.get(STATE_BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return config
    try:
        budget = int(raw)
    except ValueError:
        raise ConfigError(f"{STATE_BUDGET_ENV} must be an integer, got '{raw}'")
    if budget < 1:
        raise ConfigError(f"{STATE_BUDGET_ENV} must be >= 1")
    config.automata.state_budget = budget
    return config


def load_config() -> Config:
    """
    Load configuration from file, then apply environment overrides.

    Returns default configuration if file doesn't exist.
    Raises ConfigError if file exists but is invalid.
    """
    config_path = get_config_path()

    if not config_path.exists():
        return apply_env_overrides(get_default_config())

    if tomllib is None:
        raise ConfigError("TOML support not available. Install tomli: pip install tomli")

    try:
        with open(config_path, "rb") as f:
            data = tomllib.load(f)
        config = Config.from_dict(data)
        validate_config(config)
    except ConfigError:
        raise
    except (OSError, IOError) as e:
        raise ConfigError(f"Failed to read config file: {e}")
    except Exception as e:
        raise ConfigError(f"Invalid config file: {e}")

    return apply_env_overrides(config)


def save_config(config: Config) -> None:
    """
    Save configuration to file.

    Creates config directory if it doesn't exist.
    Raises ConfigError on failure.
    """
    if tomli_w is None:
        raise ConfigError("TOML write support not available. Install tomli_w: pip install tomli_w")

    config_dir = get_config_dir()
    config_path = get_config_path()

    try:
        config_dir.mkdir(parents=True, exist_ok=True)
        with open(config_path, "wb") as f:
            tomli_w.dump(config.to_dict(), f)
    except (OSError, IOError) as e:
        raise ConfigError(f"Failed to write config file: {e}")
    except Exception as e:
        raise ConfigError(f"Failed to serialize config: {e}")
