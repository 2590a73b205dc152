"""Full binary trees: the literal grammar, canonical enumeration, ranking and reflection.

A tree is either the leaf ``L`` or an ordered pair of trees. Trees with the same
number of leaves are ordered canonically: larger left subtree first, then by the
rank of the left subtree, then by the rank of the right subtree. Under that order
``k_1`` is the left comb and the last ``k``-leaf tree is the right comb.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from functools import lru_cache
from math import comb as binomial

from .errors import TreeIndexError, TreeSyntaxError

_LOGGER = logging.getLogger(__name__)

_LEAF_HASH = 0x4C
_NODE_SALT = 0x4E4F4445
_WHITESPACE = " \t"


@dataclass(frozen=True, slots=True, eq=False, repr=False)
class Tree:
    """A full binary tree; ``Tree()`` is the leaf, ``Tree(a, b)`` an internal vertex."""

    left: Tree | None = None
    right: Tree | None = None
    leaves: int = field(init=False)
    _hash: int = field(init=False)

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a vertex has either zero or two children")
        if self.left is None:
            object.__setattr__(self, "leaves", 1)
            object.__setattr__(self, "_hash", _LEAF_HASH)
        else:
            object.__setattr__(self, "leaves", self.left.leaves + self.right.leaves)
            object.__setattr__(self, "_hash", hash((_NODE_SALT, self.left._hash, self.right._hash)))

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def internal_vertices(self) -> int:
        return self.leaves - 1

    @property
    def height(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.height, self.right.height)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        if self._hash != other._hash or self.leaves != other.leaves:
            return False
        if self.is_leaf:
            return True
        return self.left == other.left and self.right == other.right

    def __str__(self) -> str:
        return render_tree(self)

    def __repr__(self) -> str:
        return f"Tree({render_tree(self)!r})"


LEAF = Tree()
CHERRY = Tree(LEAF, LEAF)


class Side(StrEnum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True, slots=True)
class TreeIndex:
    """Position ``rank`` (1-based) of a tree among all trees with ``leaves`` leaves."""

    leaves: int
    rank: int

    @property
    def label(self) -> str:
        return f"{self.leaves}_{self.rank}"

    def __str__(self) -> str:
        return self.label


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """Return the n-th Catalan number; ``catalan(k - 1)`` counts k-leaf trees."""
    if n < 0:
        raise ValueError("Catalan numbers are defined for n >= 0")
    return binomial(2 * n, n) // (n + 1)


def tree_count(leaves: int) -> int:
    if leaves < 1:
        raise TreeIndexError(f"trees need at least one leaf, got {leaves}")
    return catalan(leaves - 1)


# --- grammar -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_whitespace(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in _WHITESPACE:
            self.pos += 1

    def tree(self) -> Tree:
        self.skip_whitespace()
        if self.pos >= len(self.text):
            raise TreeSyntaxError("unexpected end of input", self.pos)
        ch = self.text[self.pos]
        if ch == "L":
            self.pos += 1
            return LEAF
        if ch != "(":
            raise TreeSyntaxError(f"unexpected character {ch!r}", self.pos)
        self.pos += 1
        left = self.tree()
        right = self.tree()
        self.skip_whitespace()
        if self.pos >= len(self.text):
            raise TreeSyntaxError("missing ')'", self.pos)
        if self.text[self.pos] != ")":
            raise TreeSyntaxError(f"expected ')' but found {self.text[self.pos]!r}", self.pos)
        self.pos += 1
        return Tree(left, right)


def parse_tree(text: str) -> Tree:
    """Parse a literal such as ``"((L L) L)"``; whitespace between tokens is optional."""
    if text is None or not text.strip(_WHITESPACE):
        raise TreeSyntaxError("empty tree literal", 0)
    parser = _Parser(text)
    tree = parser.tree()
    parser.skip_whitespace()
    if parser.pos != len(text):
        raise TreeSyntaxError(f"trailing input {text[parser.pos]!r}", parser.pos)
    return tree


def render_tree(t: Tree) -> str:
    if t.is_leaf:
        return "L"
    return f"({render_tree(t.left)} {render_tree(t.right)})"


# --- shapes ------------------------------------------------------------------


def comb(k: int, side: Side | str = Side.LEFT) -> Tree:
    """Return the k-leaf left comb (every right child a leaf) or its reflection."""
    if k < 1:
        raise TreeIndexError(f"a comb needs at least one leaf, got {k}")
    side = Side(side)
    tree = LEAF
    for _ in range(k - 1):
        tree = Tree(tree, LEAF) if side is Side.LEFT else Tree(LEAF, tree)
    return tree


def left_comb(k: int) -> Tree:
    return comb(k, Side.LEFT)


def right_comb(k: int) -> Tree:
    return comb(k, Side.RIGHT)


def reflect(t: Tree) -> Tree:
    if t.is_leaf:
        return t
    return Tree(reflect(t.right), reflect(t.left))


def subtrees(t: Tree) -> Iterator[Tree]:
    """Yield every vertex's subtree in post-order (children before parents)."""
    stack: list[tuple[Tree, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if node.is_leaf or expanded:
            yield node
            continue
        stack.append((node, True))
        stack.append((node.right, False))
        stack.append((node.left, False))


# --- canonical order ---------------------------------------------------------


def _block_offset(k: int, left_leaves: int) -> int:
    # Trees whose left subtree is strictly larger come first.
    return sum(tree_count(m) * tree_count(k - m) for m in range(left_leaves + 1, k))


@lru_cache(maxsize=1 << 16)
def _rank(t: Tree) -> int:
    if t.is_leaf:
        return 1
    k, a = t.leaves, t.left.leaves
    return _block_offset(k, a) + (_rank(t.left) - 1) * tree_count(k - a) + _rank(t.right)


def canonical_index(t: Tree) -> TreeIndex:
    return TreeIndex(t.leaves, _rank(t))


def tree_from_index(ix: TreeIndex) -> Tree:
    k, rank = ix.leaves, ix.rank
    total = tree_count(k)
    if not 1 <= rank <= total:
        raise TreeIndexError(f"rank {rank} out of range 1..{total} for {k}-leaf trees")
    return _unrank(k, rank - 1)


def _unrank(k: int, offset: int) -> Tree:
    if k == 1:
        return LEAF
    for a in range(k - 1, 0, -1):
        right_count = tree_count(k - a)
        block = tree_count(a) * right_count
        if offset < block:
            left_offset, right_offset = divmod(offset, right_count)
            return Tree(_unrank(a, left_offset), _unrank(k - a, right_offset))
        offset -= block
    raise AssertionError("offset exceeds block total")


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (LEAF,)
    out: list[Tree] = []
    for a in range(n - 1, 0, -1):
        rights = _enumerate(n - a)
        for left in _enumerate(a):
            out.extend(Tree(left, right) for right in rights)
    _LOGGER.debug("enumerated %d trees with %d leaves", len(out), n)
    return tuple(out)


def enumerate_trees(n: int) -> tuple[Tree, ...]:
    """Return every n-leaf tree exactly once, in canonical order.

    Results are cached and share subtrees, so keep ``n`` at desk scale (about 14).
    """
    if n < 1:
        raise TreeIndexError(f"there are no trees with {n} leaves")
    return _enumerate(n)


def tree_label(t: Tree) -> str:
    return canonical_index(t).label
