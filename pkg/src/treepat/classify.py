"""Wilf classification: group pattern sets by their normalized avoidance GF."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from string import ascii_uppercase

from .engine import GFEngine, PatternSet, canonical_set, default_engine, gf_closed_form
from .matcher import PatternMatcher
from .oeis import OeisClient
from .ratfun import RationalGF, growth_rate, series
from .trees import enumerate_trees, reflect

_LOGGER = logging.getLogger(__name__)

DEFAULT_PREFIX = 15


@dataclass(frozen=True)
class WilfClass:
    label: str
    gf: RationalGF
    members: tuple[PatternSet, ...]
    sequence_prefix: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "class": self.label,
            "gf": self.gf.to_json(),
            "sequence": list(self.sequence_prefix),
            "members": [pattern_set.literals() for pattern_set in self.members],
            "labels": [pattern_set.labels() for pattern_set in self.members],
        }


def class_label(i: int) -> str:
    """0 -> A, 25 -> Z, 26 -> AA, ..."""
    label = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        label = ascii_uppercase[r] + label
    return label


def wilf_classify(
    sets: Iterable[PatternSet],
    prefix_len: int = DEFAULT_PREFIX,
    *,
    engine: GFEngine | None = None,
) -> list[WilfClass]:
    """Partition ``sets`` by exact GF equality; classes sorted by their sequence prefix."""
    engine = engine or default_engine()
    groups: dict[RationalGF, list[PatternSet]] = {}
    for pattern_set in sets:
        groups.setdefault(engine.gf(pattern_set), []).append(pattern_set)
    _LOGGER.info("%d pattern sets fall into %d classes", sum(len(m) for m in groups.values()), len(groups))

    ordered = sorted(groups.items(), key=lambda item: series(item[0], prefix_len)[1:])
    return [
        WilfClass(class_label(i), gf, tuple(members), tuple(series(gf, prefix_len)[1:]))
        for i, (gf, members) in enumerate(ordered)
    ]


def single_patterns(k: int) -> list[PatternSet]:
    return [PatternSet((t,)) for t in enumerate_trees(k)]


def incomparable_pairs(k1: int, k2: int) -> list[PatternSet]:
    """Unordered pairs of a k1-leaf and a k2-leaf tree, neither containing the other,
    one representative per orbit under simultaneous reflection.
    """
    if k1 > k2:
        k1, k2 = k2, k1
    small, large = enumerate_trees(k1), enumerate_trees(k2)
    matchers = {t: PatternMatcher((t,)) for t in (*small, *large)}

    seen: set[frozenset] = set()
    pairs: list[PatternSet] = []
    for i, t in enumerate(small):
        for s in large[i + 1 :] if k1 == k2 else large:
            if matchers[t].contains_any(s) or matchers[s].contains_any(t):
                continue
            pair = frozenset((t, s))
            if pair in seen:
                continue
            seen.add(pair)
            seen.add(frozenset((reflect(t), reflect(s))))
            pairs.append(canonical_set((t, s), minimize=False))
    _LOGGER.info("%d incomparable (%d,%d) pairs up to reflection", len(pairs), k1, k2)
    return pairs


@dataclass(frozen=True)
class SinglePatternRow:
    k: int
    gf: RationalGF
    sequence: tuple[int, ...]
    growth: float
    oeis: tuple[str, ...] = ()


def single_pattern_table(kmax: int = 9, terms: int = 8) -> list[SinglePatternRow]:
    """One row per leaf count: the shared GF of every k-leaf pattern, its first terms,
    growth, and the ids of the bundled OEIS entries it matches.
    """
    client = OeisClient(offline=True)
    rows = []
    for k in range(1, kmax + 1):
        gf = gf_closed_form(k)
        sequence = tuple(series(gf, terms)[1:])
        ids = tuple(client.cached(sequence)) if any(sequence) else ()
        rows.append(SinglePatternRow(k, gf, sequence, growth_rate(gf), ids))
    return rows
