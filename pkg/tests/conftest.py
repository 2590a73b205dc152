"""Pytest configuration and fixtures for treepat tests."""

import pytest
from hypothesis import settings

settings.register_profile("treepat", max_examples=1000, deadline=None)
settings.load_profile("treepat")

_TREEPAT_ENV = (
    "TREEPAT_OEIS_URL",
    "TREEPAT_OEIS_TIMEOUT",
    "TREEPAT_CACHE",
    "TREEPAT_OFFLINE",
    "TREEPAT_WORKERS",
    "TREEPAT_TERMS",
    "TREEPAT_LOG_DIR",
)


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    """Keep user config files and TREEPAT_* variables out of every test."""
    for name in _TREEPAT_ENV:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("TREEPAT_CONFIG", str(tmp_path / "global-config.toml"))
    monkeypatch.chdir(tmp_path)
    return tmp_path


# Normalized-or-not (num, den, first 15 terms) per class, in class order A, B, ...
_APPENDIX = {
    (3, 4): [
        ([0, 1, 1, 1], [1], [1, 1, 1] + [0] * 12),
    ],
    (3, 5): [
        ([0, 1, 1, 1, 1], [1], [1, 1, 1, 1] + [0] * 11),
    ],
    (4, 4): [
        ([0, 1, 1, 2, 3, 2, 1], [1], [1, 1, 2, 3, 2, 1] + [0] * 9),
        ([0, 1, -1, 1], [1, -2, 1], [1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14]),
        ([0, 1], [1, -1, -1], [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610]),
    ],
    (4, 5): [
        ([0, 1, 1, 2, 4, 7, 8, 8, 6, 3, 1], [1], [1, 1, 2, 4, 7, 8, 8, 6, 3, 1, 0, 0, 0, 0, 0]),
        ([0, 1, -1, 1, 1, 1], [1, -2, 1], [1, 1, 2, 4, 7, 10, 13, 16, 19, 22, 25, 28, 31, 34, 37]),
        ([0, 1, -2, 2], [1, -3, 3, -1], [1, 1, 2, 4, 7, 11, 16, 22, 29, 37, 46, 56, 67, 79, 92]),
        ([0, 1, -1, 0, 1], [1, -2, 0, 1], [1, 1, 2, 4, 7, 12, 20, 33, 54, 88, 143, 232, 376, 609, 986]),
        ([0, 1], [1, -1, -1, -1], [1, 1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504, 927, 1705, 3136]),
    ],
    (5, 5): [
        (
            [0, 1, 1, 2, 5, 12, 26, 46, 76, 116, 163, 208, 238, 240, 210, 158, 100, 52, 21, 6, 1],
            [1],
            [1, 1, 2, 5, 12, 26, 46, 76, 116, 163, 208, 238, 240, 210, 158],
        ),
        (
            [0, 1, -2, 2, 1, 2, 3, 2, 2, 1],
            [1, -3, 3, -1],
            [1, 1, 2, 5, 12, 26, 49, 83, 129, 187, 257, 339, 433, 539, 657],
        ),
        (
            [0, 1, -4, 7, -5, 2],
            [1, -5, 10, -10, 5, -1],
            [1, 1, 2, 5, 12, 26, 51, 92, 155, 247, 376, 551, 782, 1080, 1457],
        ),
        (
            [0, 1, -5, 11, -12, 7, -2, 1],
            [1, -6, 15, -20, 15, -6, 1],
            [1, 1, 2, 5, 12, 26, 52, 98, 176, 303, 502, 803, 1244, 1872, 2744],
        ),
        (
            [0, 1, -3, 3, 1, -1],
            [1, -4, 5, -1, -2, 1],
            [1, 1, 2, 5, 12, 26, 52, 98, 177, 310, 531, 895, 1491, 2463, 4044],
        ),
        (
            [0, 1, -2, 1, 1, 2],
            [1, -3, 2, 0, 1, -1],
            [1, 1, 2, 5, 12, 26, 53, 104, 199, 375, 700, 1299, 2402, 4432, 8167],
        ),
        (
            [0, 1, -2, 0, 2, 2, -1, -1],
            [1, -3, 1, 2, 1, -1, -1],
            [1, 1, 2, 5, 12, 26, 55, 113, 227, 449, 877, 1696, 3254, 6203, 11762],
        ),
        (
            [0, 1, -1, -1, 0, 3, 2, 1],
            [1, -2, -1, 0, 3, 2, 1],
            [1, 1, 2, 5, 12, 26, 56, 118, 244, 499, 1010, 2027, 4040, 8004, 15776],
        ),
        (
            [0, 1],
            [1, -1, -1, -2, -3, -2, -1],
            [1, 1, 2, 5, 12, 26, 57, 127, 284, 632, 1405, 3126, 6958, 15485, 34458],
        ),
        (
            [0, 1, -3, 3],
            [1, -4, 5, -2],
            [1, 1, 2, 5, 12, 27, 58, 121, 248, 503, 1014, 2037, 4084, 8179, 16370],
        ),
        (
            [0, 1, -2, 0, 2, 1],
            [1, -3, 1, 2],
            [1, 1, 2, 5, 12, 27, 59, 126, 265, 551, 1136, 2327, 4743, 9630, 19493],
        ),
        (
            [0, 1, -3, 2, 1],
            [1, -4, 4],
            [1, 1, 2, 5, 12, 28, 64, 144, 320, 704, 1536, 3328, 7168, 15360, 32768],
        ),
        (
            [0, 1, -2, 1],
            [1, -3, 2, -1],
            [1, 1, 2, 5, 12, 28, 65, 151, 351, 816, 1897, 4410, 10252, 23833, 55405],
        ),
        (
            [0, 1, -1, -1],
            [1, -2, -1],
            [1, 1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860, 33461, 80782],
        ),
    ],
}

# Single k-leaf patterns: (num, den, a(1..8)).
_SINGLE = {
    1: ([0], [1], [0, 0, 0, 0, 0, 0, 0, 0]),
    2: ([0, 1], [1], [1, 0, 0, 0, 0, 0, 0, 0]),
    3: ([0, 1], [1, -1], [1, 1, 1, 1, 1, 1, 1, 1]),
    4: ([0, 1, -1], [1, -2], [1, 1, 2, 4, 8, 16, 32, 64]),
    5: ([0, 1, -2], [1, -3, 1], [1, 1, 2, 5, 13, 34, 89, 233]),
    6: ([0, 1, -3, 1], [1, -4, 3], [1, 1, 2, 5, 14, 41, 122, 365]),
    7: ([0, 1, -4, 3], [1, -5, 6, -1], [1, 1, 2, 5, 14, 42, 131, 417]),
    8: ([0, 1, -5, 6, -1], [1, -6, 10, -4], [1, 1, 2, 5, 14, 42, 132, 428]),
    9: ([0, 1, -6, 10, -4], [1, -7, 15, -10, 1], [1, 1, 2, 5, 14, 42, 132, 429]),
}


@pytest.fixture
def appendix_classes():
    """Published Wilf classes of incomparable pattern pairs, keyed by leaf counts."""
    return _APPENDIX


@pytest.fixture
def single_pattern_rows():
    """The shared GF and first eight terms for single k-leaf patterns, k = 1..9."""
    return _SINGLE
