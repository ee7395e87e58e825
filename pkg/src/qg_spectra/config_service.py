from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
import os

import yaml

from .logger_factory import get_logger
from .utils.logfmt import fmt

TOL_ENV_VAR = "QG_SPECTRA_TOL"

# Defaults mirror config.example.yaml; every getter falls back to these.
DEFAULTS: dict = {
    "tolerances": {
        "cluster": 1e-9,
        "root": 1e-10,
        "mult": 1e-8,
        "window_edge": 1e-12,
        "lookup": 1e-9,
    },
    "scan": {
        "grid_step": 0.01,
        "detect_threshold": 0.1,
        "threads": 1,
    },
    "output": {
        "format": "json",
        "float_digits": 15,
    },
}


@dataclass
class Config:
    raw: dict


class ConfigService:
    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path else None
        self._mtime_ns = 0
        self._cfg = Config(raw={})
        self._log = get_logger("config")
        self._load()

    def _load(self) -> None:
        if self._path is None or not self._path.exists():
            return
        try:
            with self._path.open("r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            self._cfg = Config(raw=data if isinstance(data, dict) else {})
            self._mtime_ns = self._path.stat().st_mtime_ns
        except (OSError, yaml.YAMLError) as exc:
            self._log.warning(f"[config-load-failed] {fmt('path', self._path)} {fmt('error', exc)}")

    def _maybe_reload(self) -> None:
        if self._path is None:
            return
        try:
            m = self._path.stat().st_mtime_ns
        except OSError:
            return
        if m != self._mtime_ns:
            # On read error, keep previous config
            self._load()

    def _section(self, name: str) -> dict:
        self._maybe_reload()
        v = self._cfg.raw.get(name)
        return v if isinstance(v, dict) else {}

    def _float(self, section: str, key: str) -> float:
        try:
            return float(self._section(section).get(key, DEFAULTS[section][key]))
        except (TypeError, ValueError):
            return float(DEFAULTS[section][key])

    def _int(self, section: str, key: str) -> int:
        try:
            return int(self._section(section).get(key, DEFAULTS[section][key]))
        except (TypeError, ValueError):
            return int(DEFAULTS[section][key])

    def _env_tol(self) -> float | None:
        raw = os.getenv(TOL_ENV_VAR)
        if raw is None or not raw.strip():
            return None
        try:
            v = float(raw)
        except ValueError:
            self._log.warning(f"[config-env-ignored] {fmt('var', TOL_ENV_VAR)} {fmt('value', raw)}")
            return None
        if v <= 0:
            self._log.warning(f"[config-env-ignored] {fmt('var', TOL_ENV_VAR)} {fmt('value', raw)}")
            return None
        return v

    # ---------- tolerances ----------

    def cluster_tol(self) -> float:
        """Relative gap below which transition-matrix eigenvalues are merged.

        Scaled by max(1, n) at the call site. QG_SPECTRA_TOL wins over the file.
        """
        env = self._env_tol()
        return env if env is not None else self._float("tolerances", "cluster")

    def mult_tol(self) -> float:
        env = self._env_tol()
        return env if env is not None else self._float("tolerances", "mult")

    def root_tol(self) -> float:
        return self._float("tolerances", "root")

    def window_edge_tol(self) -> float:
        return self._float("tolerances", "window_edge")

    def lookup_tol(self) -> float:
        return self._float("tolerances", "lookup")

    # ---------- scanner ----------

    def grid_step(self) -> float:
        return self._float("scan", "grid_step")

    def detect_threshold(self) -> float:
        return self._float("scan", "detect_threshold")

    def threads(self) -> int:
        return max(1, self._int("scan", "threads"))

    # ---------- output ----------

    def output_format(self) -> str:
        v = str(self._section("output").get("format", DEFAULTS["output"]["format"])).lower()
        return v if v in ("json", "csv", "plot", "text") else "json"

    def float_digits(self) -> int:
        return min(17, max(1, self._int("output", "float_digits")))

    # ---------- logging ----------

    def log_level(self) -> str:
        self._maybe_reload()
        return str(self._cfg.raw.get("LOG_LEVEL", "WARNING")).upper()

    def lib_log_level(self) -> str | None:
        self._maybe_reload()
        v = self._cfg.raw.get("LIB_LOG_LEVEL")
        return str(v).upper() if v else None

    def timezone(self) -> str | None:
        """"system" (or omitted), "UTC", or an IANA zone name for log timestamps."""
        self._maybe_reload()
        raw = self._cfg.raw.get("TIMEZONE") or (self._cfg.raw.get("logging") or {}).get("timezone")
        if raw is None:
            return None
        value = str(raw).strip()
        return value or None

    def log_console(self) -> bool:
        """Mirror console logs into logs/log.log."""
        self._maybe_reload()
        return bool(self._cfg.raw.get("LOG_CONSOLE", False))

    def log_errors(self) -> bool:
        """Always write ERROR-and-above to logs/errors.log, independent of LOG_LEVEL."""
        self._maybe_reload()
        return bool(self._cfg.raw.get("LOG_ERRORS", False))
