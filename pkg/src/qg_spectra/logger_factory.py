import datetime as _dt
import logging
from logging.handlers import RotatingFileHandler
import os
import sys
from typing import Optional
from zoneinfo import ZoneInfo, ZoneInfoNotFoundError

_CONFIGURED = False
_FULL_ENABLED = False

# Third-party loggers kept at WARNING unless LIB_LOG_LEVEL says otherwise
_LIB_LOGGERS = ("numpy", "scipy", "networkx")

_PATTERN = "%(asctime)s [%(levelname)s] [%(name)s] %(message)s"
_DATEFMT = "%Y-%m-%d %H:%M:%S%z"


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever sys.stderr is at emit time (test runners swap it)."""

    def __init__(self) -> None:
        super().__init__(sys.stderr)

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value) -> None:
        pass


class _ErrorOnlyFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:  # noqa: D401
        return record.levelno >= logging.ERROR


def _resolve_tz(tz: Optional[str]) -> _dt.tzinfo | None:
    if tz == "UTC":
        return _dt.timezone.utc
    if tz is None or tz == "system":
        return _dt.datetime.now().astimezone().tzinfo
    try:
        return ZoneInfo(tz)
    except (ZoneInfoNotFoundError, ValueError):
        return _dt.datetime.now().astimezone().tzinfo


class _TzFormatter(logging.Formatter):
    def __init__(self, *args, tz: Optional[str] = None, **kwargs):
        super().__init__(*args, **kwargs)
        # "UTC", None/"system" (local zone), or an IANA name with local fallback
        self._tz = _resolve_tz(tz)

    def formatTime(self, record, datefmt=None):
        dt = _dt.datetime.fromtimestamp(record.created, tz=self._tz)
        if datefmt:
            return dt.strftime(datefmt)
        return dt.isoformat()


def _parse_level(level: Optional[str]) -> tuple[int, bool]:
    lvl = (level or "INFO").upper()
    if lvl not in ("INFO", "DEBUG", "FULL", "WARNING", "ERROR"):
        lvl = "INFO"
    if lvl in ("DEBUG", "FULL"):
        return logging.DEBUG, lvl == "FULL"
    return getattr(logging, lvl), False


def _env_flag(name: str) -> bool | None:
    raw = os.getenv(name)
    if raw is None:
        return None
    return str(raw).lower() in ("1", "true", "yes", "on")


def _rotating(path: str, level: int, tz: Optional[str]) -> RotatingFileHandler:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    handler = RotatingFileHandler(
        filename=path,
        mode="a",
        maxBytes=1_000_000,
        backupCount=5,
        encoding="utf-8",
        delay=True,
    )
    handler.setLevel(level)
    handler.setFormatter(_TzFormatter(_PATTERN, tz=tz, datefmt=_DATEFMT))
    return handler


def configure_logging(
    level: Optional[str] = None,
    tz: Optional[str] = None,
    lib_log_level: Optional[str] = None,
    console_to_file: bool | None = None,
    error_file: bool | None = None,
    log_dir: str = "logs",
) -> None:
    """Install console (stderr) logging plus optional rotating log files.

    stdout stays reserved for command output, so the console handler writes
    to stderr. ``LOG_CONSOLE`` / ``LOG_ERRORS`` environment flags override the
    corresponding arguments.
    """
    global _CONFIGURED, _FULL_ENABLED
    if _CONFIGURED:
        return
    py_level, _FULL_ENABLED = _parse_level(level)

    root = logging.getLogger()
    root.setLevel(py_level)
    for h in list(root.handlers):
        root.removeHandler(h)

    handler = _StderrHandler()
    handler.setLevel(py_level)
    handler.setFormatter(_TzFormatter(_PATTERN, tz=tz, datefmt=_DATEFMT))
    root.addHandler(handler)

    mirror_enabled = console_to_file
    env_console = _env_flag("LOG_CONSOLE")
    if env_console is not None:
        mirror_enabled = env_console
    if mirror_enabled:
        try:
            root.addHandler(_rotating(os.path.join(log_dir, "log.log"), py_level, tz))
        except OSError:
            pass

    errors_enabled = bool(_env_flag("LOG_ERRORS"))
    if error_file is not None:
        errors_enabled = bool(error_file)
    if errors_enabled:
        try:
            err_handler = _rotating(os.path.join(log_dir, "errors.log"), logging.ERROR, tz)
            # errors.log stays ERROR+ even if handler levels are adjusted later
            err_handler.addFilter(_ErrorOnlyFilter())
            root.addHandler(err_handler)
        except OSError:
            # Don't break a computation due to file I/O
            pass

    lib_level_name = lib_log_level or os.getenv("LIB_LOG_LEVEL")
    lib_level = getattr(logging, lib_level_name.upper(), logging.WARNING) if lib_level_name else logging.WARNING
    for name in _LIB_LOGGERS:
        logging.getLogger(name).setLevel(lib_level)

    _CONFIGURED = True


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(f"qg_spectra.{name}")


def is_full_enabled() -> bool:
    return _FULL_ENABLED


def set_log_levels(level: Optional[str] = None, lib_log_level: Optional[str] = None) -> None:
    """Adjust root and library logger levels without reinstalling handlers."""
    global _FULL_ENABLED
    py_level, _FULL_ENABLED = _parse_level(level)
    root = logging.getLogger()
    root.setLevel(py_level)
    for h in root.handlers:
        if any(isinstance(f, _ErrorOnlyFilter) for f in h.filters):
            continue
        h.setLevel(py_level)
    if lib_log_level:
        lib_level = getattr(logging, lib_log_level.upper(), logging.WARNING)
        for name in _LIB_LOGGERS:
            logging.getLogger(name).setLevel(lib_level)
