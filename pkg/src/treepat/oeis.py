"""OEIS lookups backed by a bundled offline cache.

The bundled cache holds the sequences this project reproduces. A lookup checks
the bundled cache and the optional user cache first, then the search endpoint.
Network and HTTP failures are logged and degrade to cache-only results.
"""

from __future__ import annotations

import importlib.resources as importlib_resources
import json
import logging
import threading
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import httpx

from .errors import OeisQueryError

_LOGGER = logging.getLogger(__name__)

DEFAULT_OEIS_URL = "https://oeis.org/search"
DEFAULT_TIMEOUT = 10.0
MIN_TERMS = 6

_CACHE_IO_LOCK = threading.Lock()


@dataclass(frozen=True)
class OeisEntry:
    id: str
    name: str
    terms: tuple[int, ...]

    def matches(self, query: Sequence[int]) -> bool:
        """True when ``query`` occurs as a contiguous run of this entry's terms."""
        k = len(query)
        query = tuple(query)
        return any(self.terms[i : i + k] == query for i in range(len(self.terms) - k + 1))


@lru_cache(maxsize=1)
def bundled_cache() -> tuple[OeisEntry, ...]:
    raw = importlib_resources.files("treepat").joinpath("data", "oeis_cache.json").read_text(encoding="utf-8")
    return tuple(OeisEntry(obj["id"], obj.get("name", ""), tuple(obj["terms"])) for obj in json.loads(raw))


def _query_key(sequence: Sequence[int]) -> str:
    return ",".join(str(int(v)) for v in sequence)


def _read_user_cache(path: Path) -> dict[str, list[str]]:
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return {}
    except (OSError, ValueError) as exc:
        _LOGGER.warning("ignoring unreadable OEIS cache %s: %s", path, exc)
        return {}
    return obj if isinstance(obj, dict) else {}


def _write_user_cache(path: Path, key: str, ids: list[str]) -> None:
    with _CACHE_IO_LOCK:
        cache = _read_user_cache(path)
        cache[key] = ids
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(cache, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _format_id(number) -> str | None:
    try:
        return f"A{int(number):06d}"
    except (TypeError, ValueError):
        return None


def parse_search_response(payload) -> list[str]:
    """Extract A-numbers from either response shape (bare list or ``{"results": [...]}``)."""
    if payload is None:
        return []
    if isinstance(payload, dict):
        payload = payload.get("results") or []
    if not isinstance(payload, list):
        return []
    ids = []
    for item in payload:
        if isinstance(item, dict):
            formatted = _format_id(item.get("number"))
            if formatted:
                ids.append(formatted)
    return ids


class OeisClient:
    def __init__(
        self,
        *,
        url: str = DEFAULT_OEIS_URL,
        timeout: float = DEFAULT_TIMEOUT,
        cache_path: Path | None = None,
        offline: bool = False,
    ):
        self.url = url
        self.timeout = timeout
        self.cache_path = Path(cache_path).expanduser() if cache_path else None
        self.offline = offline

    def cached(self, sequence: Sequence[int]) -> list[str]:
        hits = [entry.id for entry in bundled_cache() if entry.matches(sequence)]
        if self.cache_path is not None:
            hits.extend(_read_user_cache(self.cache_path).get(_query_key(sequence), []))
        return sorted(set(hits))

    def search(self, sequence: Sequence[int]) -> list[str]:
        """Query the search endpoint; returns [] (with a warning) on any failure."""
        try:
            response = httpx.get(
                self.url,
                params={"q": _query_key(sequence), "fmt": "json"},
                timeout=self.timeout,
                follow_redirects=True,
            )
            response.raise_for_status()
            payload = response.json()
        except httpx.HTTPStatusError as exc:
            _LOGGER.warning("OEIS lookup failed with HTTP %s; using cached results only", exc.response.status_code)
            return []
        except httpx.HTTPError as exc:
            _LOGGER.warning("OEIS lookup failed (%s); using cached results only", exc)
            return []
        except ValueError:
            _LOGGER.warning("OEIS returned a non-JSON response; using cached results only")
            return []
        return parse_search_response(payload)

    def annotate(self, sequence: Sequence[int]) -> list[str]:
        sequence = [int(v) for v in sequence]
        if len(sequence) < MIN_TERMS:
            raise OeisQueryError(f"need at least {MIN_TERMS} terms to look up a sequence, got {len(sequence)}")
        if not any(sequence):
            return []
        hits = self.cached(sequence)
        if hits or self.offline:
            return hits
        ids = self.search(sequence)
        if ids and self.cache_path is not None:
            _write_user_cache(self.cache_path, _query_key(sequence), ids)
        return ids


def oeis_annotate(sequence: Sequence[int], *, client: OeisClient | None = None) -> list[str]:
    return (client or OeisClient()).annotate(sequence)
