"""Contiguous and non-contiguous pattern containment between full binary trees.

Non-contiguous containment: ``T`` contains ``t`` when ``t`` is the leaf, or when
``T.left`` contains ``t.left`` and ``T.right`` contains ``t.right``, or when either
subtree of ``T`` contains ``t``. Contiguous containment asks for an exact rooted
copy at some vertex, where pattern leaves may land on internal host vertices.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from enum import StrEnum

from .errors import EmptyPatternSetError
from .trees import LEAF, Tree, subtrees

_LOGGER = logging.getLogger(__name__)


class Containment(StrEnum):
    CONTIGUOUS = "contiguous"
    NONCONTIGUOUS = "noncontiguous"


class PatternMatcher:
    """Decide containment of a fixed pattern collection in many host trees.

    Every distinct subpattern gets one bit. For each host subtree the matcher
    memoizes the bitmask of subpatterns it contains (and, in contiguous mode, the
    mask of subpatterns rooted exactly at it), so a sweep over all n-leaf hosts
    touches each shared subtree once.

    Instances keep a private memo and are meant to be used from one thread; build
    one per sweep.
    """

    def __init__(self, patterns: Iterable[Tree], mode: Containment | str = Containment.NONCONTIGUOUS):
        self.patterns: tuple[Tree, ...] = tuple(dict.fromkeys(patterns))
        if not self.patterns:
            raise EmptyPatternSetError("at least one pattern is required")
        self.mode = Containment(mode)

        index: dict[Tree, int] = {}
        for pattern in self.patterns:
            for sub in subtrees(pattern):
                index.setdefault(sub, len(index))
        self._index = index
        self._leaf_bit = 1 << index[LEAF]
        self._internal = [
            (1 << bit, 1 << index[sub.left], 1 << index[sub.right]) for sub, bit in index.items() if not sub.is_leaf
        ]
        self._pattern_bits = {p: 1 << index[p] for p in self.patterns}
        self._target = 0
        for bit in self._pattern_bits.values():
            self._target |= bit
        self._memo: dict[Tree, int | tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.patterns)

    def _noncontiguous_mask(self, host: Tree) -> int:
        cached = self._memo.get(host)
        if cached is not None:
            return cached
        if host.is_leaf:
            mask = self._leaf_bit
        else:
            left = self._noncontiguous_mask(host.left)
            right = self._noncontiguous_mask(host.right)
            mask = left | right
            for bit, left_bit, right_bit in self._internal:
                if left & left_bit and right & right_bit:
                    mask |= bit
        self._memo[host] = mask
        return mask

    def _contiguous_masks(self, host: Tree) -> tuple[int, int]:
        # (subpatterns rooted exactly at host, subpatterns rooted anywhere in host)
        cached = self._memo.get(host)
        if cached is not None:
            return cached
        if host.is_leaf:
            masks = (self._leaf_bit, self._leaf_bit)
        else:
            left_root, left_any = self._contiguous_masks(host.left)
            right_root, right_any = self._contiguous_masks(host.right)
            root = self._leaf_bit
            for bit, left_bit, right_bit in self._internal:
                if left_root & left_bit and right_root & right_bit:
                    root |= bit
            masks = (root, root | left_any | right_any)
        self._memo[host] = masks
        return masks

    def profile(self, host: Tree) -> int:
        """Bitmask of subpatterns contained in ``host`` under this matcher's mode."""
        if self.mode is Containment.CONTIGUOUS:
            return self._contiguous_masks(host)[1]
        return self._noncontiguous_mask(host)

    def contains(self, host: Tree, pattern: Tree) -> bool:
        bit = self._pattern_bits.get(pattern)
        if bit is None:
            raise KeyError(f"pattern {pattern} was not compiled into this matcher")
        return bool(self.profile(host) & bit)

    def contains_any(self, host: Tree) -> bool:
        return bool(self.profile(host) & self._target)

    def avoids(self, host: Tree) -> bool:
        return not self.contains_any(host)

    def clear(self) -> None:
        _LOGGER.debug("dropping matcher memo with %d host subtrees", len(self._memo))
        self._memo.clear()


def contains_noncontiguous(host: Tree, pattern: Tree) -> bool:
    return PatternMatcher((pattern,), Containment.NONCONTIGUOUS).contains_any(host)


def contains_contiguous(host: Tree, pattern: Tree) -> bool:
    return PatternMatcher((pattern,), Containment.CONTIGUOUS).contains_any(host)


def contains(host: Tree, pattern: Tree, mode: Containment | str = Containment.NONCONTIGUOUS) -> bool:
    return PatternMatcher((pattern,), mode).contains_any(host)


def avoids_all(host: Tree, patterns: Iterable[Tree], mode: Containment | str = Containment.NONCONTIGUOUS) -> bool:
    """True iff ``host`` contains no element of ``patterns`` in the given mode."""
    return PatternMatcher(patterns, mode).avoids(host)
