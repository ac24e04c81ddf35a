"""Configuration loading: every suite tolerance and sampling box in one file.

The default TOML ships with the package; a user file given via ``--config``
or the ZMC_FORGE_CONFIG environment variable is merged over it (nested
tables merge key-by-key, scalars and arrays replace).
"""

from __future__ import annotations

import os
from importlib import resources

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .errors import ConfigError

__all__ = ["load_config", "default_config", "CONFIG_ENV_VAR"]

CONFIG_ENV_VAR = "ZMC_FORGE_CONFIG"


def _deep_merge(base: dict, over: dict) -> dict:
    out = dict(base)
    for key, val in over.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], val)
        else:
            out[key] = val
    return out


def default_config() -> dict:
    text = resources.files("zmcforge.data").joinpath("default_config.toml").read_text()
    return tomllib.loads(text)


def load_config(path: str | None = None) -> dict:
    """Default config, overlaid with the user's file when given."""
    cfg = default_config()
    path = path or os.environ.get(CONFIG_ENV_VAR)
    if path:
        try:
            with open(path, "rb") as fh:
                user = tomllib.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"malformed config {path}: {exc}")
        cfg = _deep_merge(cfg, user)
    if "seed" not in cfg or "tolerances" not in cfg:
        raise ConfigError("config needs at least 'seed' and a [tolerances] table")
    return cfg
