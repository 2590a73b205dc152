"""Permutations, classical pattern containment, and the tree <-> 231-avoider bijection.

A tree with n leaves has n - 1 internal vertices. Label them so that the root
takes the largest label of its range, the left subtree takes the smallest
labels and the right subtree the rest; reading the labels in left-to-right
vertex order gives a 231-avoiding permutation of length n - 1.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import PermutationError
from .trees import LEAF, Tree

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Permutation:
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise PermutationError(f"{list(entries)} is not a permutation of 1..{len(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse one-line notation: ``"24135"`` or ``"2,4,1,3,5"`` (needed beyond 9)."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            if "," in text:
                return cls(tuple(int(part) for part in text.split(",")))
            return cls(tuple(int(ch) for ch in text))
        except ValueError as exc:
            raise PermutationError(f"cannot parse permutation {text!r}") from exc

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        if len(self.entries) <= 9:
            return "".join(str(e) for e in self.entries)
        return ",".join(str(e) for e in self.entries)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def decreasing(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def _standardize(values: Sequence[int]) -> tuple[int, ...]:
    order = {v: i + 1 for i, v in enumerate(sorted(values))}
    return tuple(order[v] for v in values)


def perm_contains(p: Permutation, q: Permutation) -> bool:
    k = len(q)
    if k == 0:
        return True
    if k > len(p):
        return False
    return any(_standardize(sub) == q.entries for sub in combinations(p.entries, k))


def _label(t: Tree, low: int, out: list[int]) -> None:
    if t.is_leaf:
        return
    left_size = t.left.leaves - 1
    _label(t.left, low, out)
    out.append(low + t.internal_vertices - 1)
    _label(t.right, low + left_size, out)


def tree_to_perm(t: Tree) -> Permutation:
    out: list[int] = []
    _label(t, 1, out)
    return Permutation(tuple(out))


def _build(values: Sequence[int]) -> Tree:
    if not values:
        return LEAF
    top = max(range(len(values)), key=values.__getitem__)
    left, right = values[:top], values[top + 1 :]
    if left and right and max(left) > min(right):
        raise PermutationError("permutation contains 231 and has no tree")
    return Tree(_build(left), _build(right))


def perm_to_tree(p: Permutation) -> Tree:
    return _build(p.entries)


def _ends_occurrence(prefix: list[int], patterns: Sequence[tuple[int, ...]]) -> bool:
    # Only occurrences using the newest entry need checking.
    last = prefix[-1]
    head = prefix[:-1]
    for q in patterns:
        k = len(q)
        if k == 0:
            return True
        if k - 1 > len(head):
            continue
        for sub in combinations(head, k - 1):
            if _standardize((*sub, last)) == q:
                return True
    return False


def count_avoiding_perms(n: int, patterns: Iterable[Permutation]) -> int:
    """Count permutations of length n avoiding every pattern, pruning on each extension."""
    if n < 0:
        raise PermutationError(f"length must be nonnegative, got {n}")
    qs = [q.entries for q in patterns]
    if any(len(q) == 0 for q in qs):
        return 0
    prefix: list[int] = []
    used = [False] * (n + 1)

    def extend() -> int:
        if len(prefix) == n:
            return 1
        total = 0
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            if not _ends_occurrence(prefix, qs):
                used[v] = True
                total += extend()
                used[v] = False
            prefix.pop()
        return total

    return extend()


def avoidance_sequence(nmax: int, patterns: Iterable[Permutation]) -> list[int]:
    patterns = list(patterns)
    return [count_avoiding_perms(n, patterns) for n in range(1, nmax + 1)]


def _search_one(args: tuple[Permutation, tuple[int, ...], int, int]) -> list[tuple[Permutation, ...]]:
    short, target, long_len, long_count = args
    matches = []
    for longs in combinations(all_permutations(long_len), long_count):
        patterns = (short, *longs)
        for n, expected in enumerate(target, start=1):
            if count_avoiding_perms(n, patterns) != expected:
                break
        else:
            matches.append(patterns)
    return matches


def search_pattern_sets(
    target: Sequence[int],
    *,
    short_len: int = 3,
    long_len: int = 4,
    long_count: int = 2,
    workers: int = 1,
) -> list[tuple[Permutation, ...]]:
    """Find every set {one short pattern, ``long_count`` long patterns} whose avoidance
    counts for lengths 1, 2, ... equal ``target``.
    """
    target = tuple(target)
    tasks = [(short, target, long_len, long_count) for short in all_permutations(short_len)]
    if workers <= 1:
        results = [_search_one(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_one, tasks))
    matches = [m for chunk in results for m in chunk]
    _LOGGER.info("pattern-set search over %d short patterns found %d matches", len(tasks), len(matches))
    return sorted(matches, key=lambda ps: tuple(p.entries for p in ps))
