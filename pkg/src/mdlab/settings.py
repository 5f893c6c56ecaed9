"""
Read-only access to settings.

Settings file is editable by user. Nothing here prints,
stdout of the CLI is reserved for JSON.
"""

from __future__ import annotations

import json
import os
import re
from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

from .lib.errors import ParameterError
from .user_data import cache_dir, config_dir

HERE = Path(__file__).parent

TEMPLATE = HERE / "settings_template.json"
SETTINGS = config_dir / "settings.json"

# Variables usable in string values next to the keys themselves
BUILTIN_VARIABLES = {"config_dir": str(config_dir), "cache_dir": str(cache_dir)}

ENV_STATE_CAP = "MDL_STATE_CAP"

if TYPE_CHECKING:
    KEYS = Literal[
        "state_cap",
        "default_q",
        "default_Q",
        "default_s",
        "default_seed",
        "fusion_leg_cap",
        "reports_file",
    ]


def _ensure_settings_file() -> None:
    # Copying the template content into a user directory,
    # where it can be edited
    if not SETTINGS.exists():
        SETTINGS.write_text(TEMPLATE.read_text())


def get_settings() -> dict[str, Any]:
    """Get the settings as a dict, template values filling missing keys."""
    _ensure_settings_file()
    settings = json.loads(TEMPLATE.read_text())
    with open(SETTINGS) as f:
        settings.update(json.load(f))
    return settings


def update_settings(key: str, value: Any) -> None:
    """Update a value in the settings file."""
    _ensure_settings_file()
    with open(SETTINGS) as f:
        settings = json.load(f)
    settings[key] = value
    with open(SETTINGS, "w") as f:
        json.dump(settings, f, indent=4)


def get(key: KEYS) -> Any:
    """Get a value from the settings file, string values resolved."""
    value = get_settings()[key]
    if isinstance(value, str):
        return resolve_variables(value)
    return value


def resolve_variables(value: str) -> str:
    """Allows for using variables in JSON file.

    Variables are enclosed in double curly braces, e.g.:
    `{{cache_dir}}/reports.jsonl` will resolve the `cache_dir`
    variable, either built-in or another key from the JSON file.
    """

    def _replace_by_variable(m: re.Match[str]) -> str:
        variable = m.group(1).strip()
        if variable in BUILTIN_VARIABLES:
            return BUILTIN_VARIABLES[variable]
        return str(get(variable))  # type: ignore

    return re.sub(r"\{\{(.*?)\}\}", _replace_by_variable, value)


def state_cap() -> int:
    """Maximal number of states of an enumerated space.

    `MDL_STATE_CAP` in the environment wins over the settings file
    and is never written back.
    """
    env_cap = os.getenv(ENV_STATE_CAP)
    if env_cap is not None:
        try:
            return int(env_cap)
        except ValueError:
            raise ParameterError(f"{ENV_STATE_CAP} must be an integer, got {env_cap!r}") from None
    return int(get("state_cap"))


def reports_file() -> Path:
    return Path(get("reports_file"))
