"""
Configuration management for RecurrentGF.

This module handles loading and accessing configuration settings from config.yaml.
It provides global access to settings like output variable names, window
limits, the default verification box and server parameters.
"""

import os
from pathlib import Path
from typing import List, Optional

import yaml

DEFAULT_PATH = Path(__file__).resolve().parent.parent / "config.yaml"


def load_config(path: Optional[str] = None):
    """
    Load configuration from YAML file.

    Args:
        path: Path to the configuration file; defaults to $RECURRENTGF_CONFIG,
            then to the config.yaml shipped with the package

    Returns:
        dict: Configuration dictionary

    Raises:
        FileNotFoundError: If config file doesn't exist
        yaml.YAMLError: If config file is malformed
    """
    path = path or os.environ.get("RECURRENTGF_CONFIG") or DEFAULT_PATH
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def variable_names(n: int, short: bool = False) -> List[str]:
    """Output variable names z1..zn, or the configured short names when asked."""
    variables = CONFIG.get("variables", {})
    names = variables.get("short_names", ["z", "w"])
    if short and n <= len(names):
        return list(names[:n])
    prefix = variables.get("prefix", "z")
    return [f"{prefix}{i + 1}" for i in range(n)]


# Global configuration object
CONFIG = load_config()
