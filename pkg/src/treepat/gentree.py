"""Parent and descendant trees, ancestries, and the comb-avoidance generating tree.

The parent of a tree deletes the rightmost pair of sibling leaves. Its
descendants attach a cherry to one of the leaves lying to the right of every
closed vertex (an internal vertex whose right child is internal), in the
left-to-right vertex order. For the k-leaf left comb every avoider is labelled
by how many of its descendants still avoid the comb; a label ``i`` has children
labelled ``min(j, k - 2)`` for ``j = 2 .. i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb as binomial

from .engine import gf_comb
from .errors import RatfunError, TreeIndexError
from .ratfun import linear_recurrence
from .trees import CHERRY, LEAF, Tree


def parent_tree(t: Tree) -> Tree:
    if t.is_leaf:
        raise TreeIndexError("the one-leaf tree has no parent")
    if t.left.is_leaf and t.right.is_leaf:
        return LEAF
    if not t.right.is_leaf:
        return Tree(t.left, parent_tree(t.right))
    return Tree(parent_tree(t.left), t.right)


def _eligible_start(t: Tree) -> int:
    """Leaves to the left of the last closed vertex (0 when there is none)."""
    if t.is_leaf:
        return 0
    right_cut = _eligible_start(t.right)
    if right_cut:
        return t.left.leaves + right_cut
    if not t.right.is_leaf:
        return t.left.leaves
    return _eligible_start(t.left)


def _grow_leaf(t: Tree, index: int) -> Tree:
    if t.is_leaf:
        return CHERRY
    if index < t.left.leaves:
        return Tree(_grow_leaf(t.left, index), t.right)
    return Tree(t.left, _grow_leaf(t.right, index - t.left.leaves))


def descendant_count(t: Tree) -> int:
    return t.leaves - _eligible_start(t)


def descendant_trees(t: Tree) -> list[Tree]:
    """Descendants in left-to-right order of the leaf that grows."""
    return [_grow_leaf(t, i) for i in range(_eligible_start(t), t.leaves)]


def ancestry(t: Tree) -> list[Tree]:
    chain = [t]
    while not chain[-1].is_leaf:
        chain.append(parent_tree(chain[-1]))
    chain.reverse()
    return chain


def succession_labels(label: int, k: int) -> list[int]:
    """Labels of the children of a node labelled ``label`` when avoiding the k-leaf comb."""
    if k < 3:
        raise TreeIndexError(f"the generating tree needs k >= 3, got {k}")
    return [min(j, k - 2) for j in range(2, label + 2)]


@dataclass(frozen=True)
class GenTreeTable:
    """``rows[n - 1][i - 1]`` counts n-leaf comb avoiders with exactly ``i`` avoiding descendants."""

    k: int
    rows: tuple[tuple[int, ...], ...]

    def entry(self, n: int, i: int) -> int:
        return self.rows[n - 1][i - 1]

    def sums(self) -> list[int]:
        return [sum(row) for row in self.rows]


def build_gentree_table(k: int, nmax: int) -> GenTreeTable:
    if k < 3:
        raise TreeIndexError(f"the generating tree needs k >= 3, got {k}")
    if nmax < 1:
        raise TreeIndexError(f"nmax must be positive, got {nmax}")
    width = k - 2
    row = [0] * width
    row[0] = 1
    rows = [tuple(row)]
    for _ in range(nmax - 1):
        nxt = [0] * width
        for label, count in enumerate(row, start=1):
            if count:
                for child in succession_labels(label, k):
                    nxt[child - 1] += count
        row = nxt
        rows.append(tuple(row))
    return GenTreeTable(k=k, rows=tuple(rows))


def comb_sequence_gentree(k: int, nmax: int) -> list[int]:
    return build_gentree_table(k, nmax).sums()


def comb_recurrence_coeffs(k: int) -> list[int]:
    """Coefficients of ``a_{n-1}, a_{n-2}, ...`` in the comb-avoidance recurrence."""
    if k < 3:
        raise TreeIndexError(f"the recurrence needs k >= 3, got {k}")
    return [(-1) ** i * binomial(k - i, i - 1) for i in range(2, (k + 1) // 2 + 1)]


def comb_recurrence(k: int) -> tuple[list[int], int]:
    """Return ``(coeffs, start)``: the comb recurrence and the first n it holds for.

    The closed-form coefficients must match the reduced denominator of ``gf_comb(k)``.
    """
    coeffs = comb_recurrence_coeffs(k)
    reduced, start = linear_recurrence(gf_comb(k))
    if reduced != coeffs:
        raise RatfunError(f"comb recurrence {coeffs} disagrees with the generating function for k={k}")
    return coeffs, start
