"""Avoidance generating functions for single patterns and finite pattern sets.

``g_S(x)`` counts trees avoiding every element of ``S`` by number of leaves. A
tree avoids ``t`` exactly when both subtrees avoid ``t`` and at least one of
``left avoids t.left`` / ``right avoids t.right`` holds. Expanding the "at least
one" over all patterns by inclusion-exclusion yields one term per sign vector in
``{-1, 0, 1}^j``; only the all ``-1`` and all ``+1`` vectors mention ``g_S``
itself, so the equation is linear in ``g_S`` and is solved directly.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb as binomial

from .errors import EmptyPatternSetError, RecursionMeasureError, TreeIndexError
from .matcher import PatternMatcher
from .ratfun import ONE, X, ZERO, Polynomial, RationalGF
from .trees import CHERRY, Tree, canonical_index, render_tree

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class PatternSet:
    """Deduplicated patterns in canonical order; build with ``canonical_set``."""

    elements: tuple[Tree, ...]

    def __post_init__(self):
        if not self.elements:
            raise EmptyPatternSetError("a pattern set needs at least one tree")

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, tree: Tree) -> bool:
        return tree in self.elements

    @property
    def total_leaves(self) -> int:
        return sum(t.leaves for t in self.elements)

    def labels(self) -> list[str]:
        return [canonical_index(t).label for t in self.elements]

    def literals(self) -> list[str]:
        return [render_tree(t) for t in self.elements]

    def __str__(self) -> str:
        return "{" + ", ".join(self.literals()) + "}"


def _minimal(trees: list[Tree]) -> list[Tree]:
    matchers = {t: PatternMatcher((t,)) for t in trees}
    return [t for t in trees if not any(s != t and matchers[s].contains_any(t) for s in trees)]


def canonical_set(trees: Iterable[Tree], *, minimize: bool = True) -> PatternSet:
    """Deduplicate and sort ``trees``; with ``minimize``, drop elements containing another."""
    unique = list(dict.fromkeys(trees))
    if not unique:
        raise EmptyPatternSetError("a pattern set needs at least one tree")
    if minimize and len(unique) > 1:
        unique = _minimal(unique)
    unique.sort(key=lambda t: (t.leaves, canonical_index(t).rank))
    return PatternSet(tuple(unique))


def _as_pattern_set(patterns: PatternSet | Iterable[Tree], minimize: bool) -> PatternSet:
    if isinstance(patterns, PatternSet):
        return canonical_set(patterns.elements, minimize=minimize) if minimize else patterns
    if isinstance(patterns, Tree):
        return PatternSet((patterns,))
    return canonical_set(patterns, minimize=minimize)


@lru_cache(maxsize=1 << 12)
def gf_single(t: Tree) -> RationalGF:
    """``g_t = (x - g_l * g_r) / (1 - g_l - g_r)`` with ``g_L = 0``."""
    if t.is_leaf:
        return ZERO
    g_left = gf_single(t.left)
    g_right = gf_single(t.right)
    return (X - g_left * g_right) / (ONE - g_left - g_right)


def gf_comb(k: int) -> RationalGF:
    """Iterate ``g_{c_k} = x / (1 - g_{c_{k-1}})`` from ``g_{c_1} = 0``."""
    if k < 1:
        raise TreeIndexError(f"a comb needs at least one leaf, got {k}")
    g = ZERO
    for _ in range(k - 1):
        g = X / (ONE - g)
    return g


def gf_closed_form(k: int) -> RationalGF:
    """The signed-binomial closed form shared by every k-leaf pattern."""
    if k < 1:
        raise TreeIndexError(f"a pattern needs at least one leaf, got {k}")
    num = [0] * k
    for i in range((k - 2) // 2 + 1):
        num[i + 1] = (-1) ** i * binomial(k - i - 2, i)
    den = [(-1) ** i * binomial(k - i - 1, i) for i in range((k - 1) // 2 + 1)]
    return RationalGF(Polynomial(tuple(num)), Polynomial(tuple(den)))


class GFEngine:
    """Memoized solver for ``g_S`` over canonical pattern sets.

    The memo is guarded by a re-entrant lock, so one engine can be shared between
    threads; concurrent calls are serialized and see the same entries.
    """

    def __init__(self, *, minimize: bool = True):
        self.minimize = minimize
        self._memo: dict[PatternSet, RationalGF] = {}
        self._lock = threading.RLock()
        self.hits = 0

    def __len__(self) -> int:
        return len(self._memo)

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self.hits = 0

    def gf(self, patterns: PatternSet | Iterable[Tree]) -> RationalGF:
        key = _as_pattern_set(patterns, self.minimize)
        with self._lock:
            return self._solve(key)

    def _solve(self, key: PatternSet) -> RationalGF:
        cached = self._memo.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        result = self._compute(key)
        self._memo[key] = result
        if len(self._memo) % 1000 == 0:
            _LOGGER.debug("gf memo holds %d sets (%d hits)", len(self._memo), self.hits)
        return result

    def _sub(self, trees: list[Tree], measure: int) -> RationalGF:
        if sum(t.leaves for t in trees) >= measure:
            raise RecursionMeasureError(f"sub-problem {trees} does not shrink below {measure} leaves")
        return self._solve(canonical_set(trees, minimize=self.minimize))

    def _compute(self, key: PatternSet) -> RationalGF:
        elements = key.elements
        if any(t.is_leaf for t in elements):
            return ZERO
        if CHERRY in elements:
            return X

        measure = key.total_leaves
        j = len(elements)
        rest = ZERO
        for signs in product((-1, 0, 1), repeat=j):
            if all(s == -1 for s in signs) or all(s == 1 for s in signs):
                continue
            left = [t if s == -1 else t.left for t, s in zip(elements, signs)]
            right = [t if s == 1 else t.right for t, s in zip(elements, signs)]
            zeros = signs.count(0)
            term = self._sub(left, measure) * self._sub(right, measure)
            rest = rest - term if zeros % 2 else rest + term

        g_left = self._sub([t.left for t in elements], measure)
        g_right = self._sub([t.right for t in elements], measure)
        return (X + rest) / (ONE - g_left - g_right)


_DEFAULT_ENGINE = GFEngine()


def default_engine() -> GFEngine:
    return _DEFAULT_ENGINE


def gf_set(patterns: PatternSet | Iterable[Tree], *, engine: GFEngine | None = None) -> RationalGF:
    """Avoidance generating function of a nonempty pattern set."""
    return (engine or _DEFAULT_ENGINE).gf(patterns)
