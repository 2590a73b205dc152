"""Logging setup and layered configuration (env > project file > global file > default)."""

from __future__ import annotations

import logging
import os
import sys
import tomllib
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .oeis import DEFAULT_OEIS_URL, DEFAULT_TIMEOUT

_LOGGER = logging.getLogger(__name__)

_REPO_CONFIG_FILENAMES = (".treepat.toml",)


def configure_logging(*, verbosity: int, log_file: Path | None = None) -> None:
    """Configure logging for CLI usage."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG

    handlers: list[logging.Handler] = []
    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(level)
    handlers.append(stream_handler)

    if log_file is not None:
        log_path = Path(log_file).expanduser()
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding="utf-8")
        file_handler.setLevel(level)
        handlers.append(file_handler)

    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        handlers=handlers,
    )
    logging.getLogger("treepat").setLevel(level)


def _env_truthy(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "y", "on")


def _env_first(*names: str) -> str | None:
    for name in names:
        val = os.environ.get(name)
        if val is None:
            continue
        val = val.strip()
        if val:
            return val
    return None


def _global_config_path() -> Path:
    override = os.environ.get("TREEPAT_CONFIG")
    if override:
        return Path(override).expanduser()

    home = Path.home()
    if sys.platform == "darwin":
        return home / "Library" / "Application Support" / "treepat" / "config.toml"
    if os.name == "nt":
        base = os.environ.get("APPDATA")
        if base:
            return Path(base) / "treepat" / "config.toml"
        return home / "AppData" / "Roaming" / "treepat" / "config.toml"

    xdg = os.environ.get("XDG_CONFIG_HOME")
    if xdg:
        return Path(xdg) / "treepat" / "config.toml"
    return home / ".config" / "treepat" / "config.toml"


def _repo_config_path(project_root: Path) -> Path:
    for name in _REPO_CONFIG_FILENAMES:
        candidate = project_root / name
        if candidate.exists():
            return candidate
    return project_root / _REPO_CONFIG_FILENAMES[0]


def _read_toml_file(path: Path) -> dict:
    try:
        raw = path.read_bytes()
    except OSError:
        return {}
    try:
        obj = tomllib.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        _LOGGER.warning("ignoring malformed config file %s: %s", path, exc)
        return {}
    return obj if isinstance(obj, dict) else {}


def _config_get(cfg: dict, dotted_key: str, default=None):
    cur = cfg
    for part in dotted_key.split("."):
        if not isinstance(cur, dict) or part not in cur:
            return default
        cur = cur[part]
    return cur


def _config_has(cfg: dict, dotted_key: str) -> bool:
    cur = cfg
    for part in dotted_key.split("."):
        if not isinstance(cur, dict) or part not in cur:
            return False
        cur = cur[part]
    return True


def _coerce_bool(value, key: str) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        return _env_truthy(value)
    raise ConfigError(f"{key} must be a boolean, got {value!r}")


def _coerce_positive_int(value, key: str) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None
    if isinstance(value, bool) or number < 1:
        raise ConfigError(f"{key} must be a positive integer, got {value!r}")
    return number


def _coerce_timeout(value, key: str) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number of seconds, got {value!r}") from None
    if number <= 0:
        raise ConfigError(f"{key} must be positive, got {value!r}")
    return number


def _coerce_optional_path(value, key: str) -> str | None:
    if value in (None, ""):
        return None
    if not isinstance(value, str):
        raise ConfigError(f"{key} must be a path string, got {value!r}")
    return str(Path(value).expanduser())


# key -> (environment variable, default, coercion)
_KEYS = {
    "oeis.url": ("TREEPAT_OEIS_URL", DEFAULT_OEIS_URL, lambda v, k: str(v)),
    "oeis.timeout": ("TREEPAT_OEIS_TIMEOUT", DEFAULT_TIMEOUT, _coerce_timeout),
    "oeis.cache": ("TREEPAT_CACHE", None, _coerce_optional_path),
    "oeis.offline": ("TREEPAT_OFFLINE", False, _coerce_bool),
    "compute.workers": ("TREEPAT_WORKERS", 1, _coerce_positive_int),
    "output.terms": ("TREEPAT_TERMS", 15, _coerce_positive_int),
}


def resolve_config_with_provenance(*, project_root: Path) -> tuple[dict, dict]:
    """Resolve every known key and record where its value came from."""
    global_path = _global_config_path()
    repo_path = _repo_config_path(project_root)

    global_cfg = _read_toml_file(global_path) if global_path.exists() else {}
    repo_cfg = _read_toml_file(repo_path) if repo_path.exists() else {}

    resolved: dict = {}
    provenance: dict = {}

    for key, (env_var, default, coerce) in _KEYS.items():
        if env_var in os.environ:
            value, source = os.environ[env_var], f"env:{env_var}"
        elif _config_has(repo_cfg, key):
            value, source = _config_get(repo_cfg, key), f"repo:{repo_path}"
        elif _config_has(global_cfg, key):
            value, source = _config_get(global_cfg, key), f"global:{global_path}"
        else:
            value, source = default, "default"
        if source != "default":
            value = coerce(value, key)
        section, field = key.split(".", 1)
        resolved.setdefault(section, {})[field] = value
        provenance[key] = source

    return resolved, provenance


@dataclass(frozen=True)
class Settings:
    oeis_url: str
    oeis_timeout: float
    oeis_cache: Path | None
    oeis_offline: bool
    workers: int
    terms: int

    @classmethod
    def from_resolved(cls, resolved: dict) -> Settings:
        cache = _config_get(resolved, "oeis.cache")
        return cls(
            oeis_url=_config_get(resolved, "oeis.url"),
            oeis_timeout=_config_get(resolved, "oeis.timeout"),
            oeis_cache=Path(cache) if cache else None,
            oeis_offline=_config_get(resolved, "oeis.offline"),
            workers=_config_get(resolved, "compute.workers"),
            terms=_config_get(resolved, "output.terms"),
        )


def load_settings(*, project_root: Path | None = None) -> Settings:
    root = project_root or Path.cwd()
    resolved, _ = resolve_config_with_provenance(project_root=root)
    return Settings.from_resolved(resolved)
