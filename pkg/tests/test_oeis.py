"""Tests for OEIS annotation with the bundled cache and the HTTP search endpoint."""

import json
import logging
import re

import httpx
import pytest

from treepat.errors import OeisQueryError
from treepat.oeis import OeisClient, bundled_cache, oeis_annotate, parse_search_response

SEARCH_URL = "https://oeis.test/search"
SEARCH_PATTERN = re.compile(r"https://oeis\.test/search\?.*")
UNKNOWN = [3, 1, 4, 1, 5, 9, 2, 6]


class TestBundledCache:
    """Tests for the offline cache that ships with the package."""

    def test_entries_load(self):
        ids = {entry.id for entry in bundled_cache()}
        assert {"A000108", "A001519", "A001006"} <= ids

    def test_cache_hit_skips_network(self, httpx_mock):
        client = OeisClient(url=SEARCH_URL)
        assert client.annotate([1, 1, 2, 5, 13, 34, 89, 233]) == ["A001519"]
        assert httpx_mock.get_requests() == []

    def test_matches_any_contiguous_run(self):
        assert oeis_annotate([4, 8, 16, 32, 64, 128]) == ["A000079", "A011782"]

    def test_several_hits_sorted(self):
        assert oeis_annotate([1, 1, 2, 5, 14, 42]) == ["A000108", "A024175", "A080937", "A080938"]


class TestAnnotate:
    """Tests for query validation and fallbacks."""

    def test_too_short(self):
        with pytest.raises(OeisQueryError):
            oeis_annotate([1, 1, 2, 5, 13])

    def test_all_zero(self, httpx_mock):
        assert OeisClient(url=SEARCH_URL).annotate([0] * 8) == []
        assert httpx_mock.get_requests() == []

    def test_offline_miss(self, httpx_mock):
        assert OeisClient(url=SEARCH_URL, offline=True).annotate(UNKNOWN) == []
        assert httpx_mock.get_requests() == []

    def test_search_results(self, httpx_mock):
        httpx_mock.add_response(url=SEARCH_PATTERN, json=[{"number": 1234, "name": "x"}, {"number": 56}])
        assert OeisClient(url=SEARCH_URL).annotate(UNKNOWN) == ["A001234", "A000056"]
        request = httpx_mock.get_requests()[0]
        assert request.url.params["q"] == "3,1,4,1,5,9,2,6"
        assert request.url.params["fmt"] == "json"

    def test_network_failure_degrades(self, httpx_mock, caplog):
        httpx_mock.add_exception(httpx.ConnectError("connection refused"), url=SEARCH_PATTERN)
        with caplog.at_level(logging.WARNING, logger="treepat"):
            assert OeisClient(url=SEARCH_URL).annotate(UNKNOWN) == []
        assert "OEIS lookup failed" in caplog.text

    def test_http_error_degrades(self, httpx_mock, caplog):
        httpx_mock.add_response(url=SEARCH_PATTERN, status_code=503)
        with caplog.at_level(logging.WARNING, logger="treepat"):
            assert OeisClient(url=SEARCH_URL).annotate(UNKNOWN) == []
        assert "HTTP 503" in caplog.text

    def test_non_json_degrades(self, httpx_mock):
        httpx_mock.add_response(url=SEARCH_PATTERN, text="<html>busy</html>")
        assert OeisClient(url=SEARCH_URL).annotate(UNKNOWN) == []


class TestUserCache:
    """Tests for the on-disk cache of earlier network answers."""

    def test_results_written_and_reused(self, httpx_mock, tmp_path):
        cache_path = tmp_path / "cache" / "oeis.json"
        httpx_mock.add_response(url=SEARCH_PATTERN, json={"results": [{"number": 999}]})

        client = OeisClient(url=SEARCH_URL, cache_path=cache_path)
        assert client.annotate(UNKNOWN) == ["A000999"]
        assert json.loads(cache_path.read_text()) == {"3,1,4,1,5,9,2,6": ["A000999"]}

        offline = OeisClient(url=SEARCH_URL, cache_path=cache_path, offline=True)
        assert offline.annotate(UNKNOWN) == ["A000999"]
        assert len(httpx_mock.get_requests()) == 1

    def test_unreadable_cache_ignored(self, tmp_path, caplog):
        cache_path = tmp_path / "oeis.json"
        cache_path.write_text("{not json")
        with caplog.at_level(logging.WARNING, logger="treepat"):
            assert OeisClient(cache_path=cache_path, offline=True).annotate(UNKNOWN) == []
        assert "unreadable OEIS cache" in caplog.text


class TestParseSearchResponse:
    """Tests for both response shapes."""

    @pytest.mark.parametrize(
        ("payload", "expected"),
        [
            (None, []),
            ([], []),
            ([{"number": 45}], ["A000045"]),
            ({"results": None}, []),
            ({"results": [{"number": 108}, {"name": "no number"}]}, ["A000108"]),
            ("unexpected", []),
        ],
    )
    def test_shapes(self, payload, expected):
        assert parse_search_response(payload) == expected
