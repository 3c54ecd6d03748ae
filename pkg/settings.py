"""
Run configuration: explicit overrides > environment > defaults.
"""
from __future__ import annotations

import logging
import os
from typing import Any, Callable, Dict

logger = logging.getLogger(__name__)

ENV_PREFIX = "THRESHOLD_AM_"

DEFAULTS: Dict[str, Any] = {
    "seed": 0,
    "steps": 10,
    "orbit_cap": 4096,
    "trials": 100,
    "max_agents": 8,
    "edge_probability": "1/2",
    "behavior_probability": "1/2",
    "workers": 4,
    "log_level": "WARNING",
}

# keys that may come from the environment, with their converters
_ENV_KEYS: Dict[str, Callable[[str], Any]] = {
    "seed": int,
    "workers": int,
    "log_level": lambda v: v.strip().upper(),
}


# ───────────────────────────────────────────
class SettingsManager:
    """Dict-backed settings with environment fallbacks."""

    def __init__(self, environ=None):
        self._env = os.environ if environ is None else environ
        self._values: Dict[str, Any] = {}

    # ----------
    def get(self, key: str, default=None):
        if key in self._values:
            return self._values[key]
        convert = _ENV_KEYS.get(key)
        raw = self._env.get(ENV_PREFIX + key.upper()) if convert else None
        fallback = DEFAULTS.get(key, default) if default is None else default
        if raw is None or raw == "":
            return fallback
        try:
            return convert(raw)
        except ValueError:
            logger.warning("Ignoring malformed %s%s=%r", ENV_PREFIX, key.upper(), raw)
            return fallback

    def set(self, key: str, value):
        self._values[key] = value

    def as_dict(self) -> Dict[str, Any]:
        return {key: self.get(key) for key in DEFAULTS}
