"""Brute-force avoidance counts: enumerate every n-leaf tree and test it."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor

from .engine import PatternSet
from .errors import TreeIndexError
from .matcher import Containment, PatternMatcher
from .trees import Tree, enumerate_trees

_LOGGER = logging.getLogger(__name__)


def _patterns(patterns: PatternSet | Iterable[Tree]) -> tuple[Tree, ...]:
    if isinstance(patterns, Tree):
        return (patterns,)
    return tuple(patterns)


def avoiders(
    n: int,
    patterns: PatternSet | Iterable[Tree],
    mode: Containment | str = Containment.NONCONTIGUOUS,
    *,
    matcher: PatternMatcher | None = None,
) -> Iterator[Tree]:
    """Yield the n-leaf trees avoiding every pattern, in canonical order."""
    if n < 1:
        raise TreeIndexError(f"there are no trees with {n} leaves")
    matcher = matcher or PatternMatcher(_patterns(patterns), mode)
    for host in enumerate_trees(n):
        if matcher.avoids(host):
            yield host


def count_avoiders(
    n: int,
    patterns: PatternSet | Iterable[Tree],
    mode: Containment | str = Containment.NONCONTIGUOUS,
    *,
    matcher: PatternMatcher | None = None,
) -> int:
    return sum(1 for _ in avoiders(n, patterns, mode, matcher=matcher))


def _count_task(args: tuple[int, tuple[Tree, ...], str]) -> tuple[int, int]:
    n, patterns, mode = args
    return n, count_avoiders(n, patterns, mode)


def sequence_brute(
    nmax: int,
    patterns: PatternSet | Iterable[Tree],
    mode: Containment | str = Containment.NONCONTIGUOUS,
    *,
    workers: int = 1,
) -> list[int]:
    """Return ``[count_avoiders(n, ...) for n in 1..nmax]``.

    With ``workers > 1`` the sizes are spread over a process pool; the result
    does not depend on completion order.
    """
    if nmax < 1:
        raise TreeIndexError(f"nmax must be positive, got {nmax}")
    patterns = _patterns(patterns)
    mode = Containment(mode)
    if workers <= 1:
        matcher = PatternMatcher(patterns, mode)
        counts = []
        for n in range(1, nmax + 1):
            counts.append(count_avoiders(n, patterns, mode, matcher=matcher))
            _LOGGER.info("n=%d: %d avoiders", n, counts[-1])
        return counts

    counts = [0] * nmax
    tasks = [(n, patterns, mode.value) for n in range(nmax, 0, -1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for n, count in pool.map(_count_task, tasks):
            counts[n - 1] = count
            _LOGGER.info("n=%d: %d avoiders", n, count)
    return counts
