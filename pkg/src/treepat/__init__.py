"""Enumerate and classify full binary trees avoiding non-contiguous tree patterns."""

from .classify import WilfClass, incomparable_pairs, single_pattern_table, single_patterns, wilf_classify
from .cli import cli
from .engine import GFEngine, PatternSet, canonical_set, gf_closed_form, gf_comb, gf_set, gf_single
from .errors import TreepatError
from .gentree import (
    GenTreeTable,
    ancestry,
    build_gentree_table,
    comb_recurrence,
    comb_recurrence_coeffs,
    comb_sequence_gentree,
    descendant_count,
    descendant_trees,
    parent_tree,
)
from .matcher import Containment, PatternMatcher, avoids_all, contains_contiguous, contains_noncontiguous
from .oeis import OeisClient, oeis_annotate
from .oracle import avoiders, count_avoiders, sequence_brute
from .perms import (
    Permutation,
    count_avoiding_perms,
    decreasing,
    perm_contains,
    perm_to_tree,
    tree_to_perm,
)
from .ratfun import Polynomial, RationalGF, growth_rate, rf_add, rf_div, rf_mul, rf_sub, series
from .trees import (
    LEAF,
    Side,
    Tree,
    TreeIndex,
    canonical_index,
    comb,
    enumerate_trees,
    left_comb,
    parse_tree,
    reflect,
    render_tree,
    right_comb,
    tree_from_index,
)

__all__ = [
    "LEAF",
    "Containment",
    "GFEngine",
    "GenTreeTable",
    "OeisClient",
    "PatternMatcher",
    "PatternSet",
    "Permutation",
    "Polynomial",
    "RationalGF",
    "Side",
    "Tree",
    "TreeIndex",
    "TreepatError",
    "WilfClass",
    "ancestry",
    "avoiders",
    "avoids_all",
    "build_gentree_table",
    "canonical_index",
    "canonical_set",
    "cli",
    "comb",
    "comb_recurrence",
    "comb_recurrence_coeffs",
    "comb_sequence_gentree",
    "contains_contiguous",
    "contains_noncontiguous",
    "count_avoiders",
    "count_avoiding_perms",
    "decreasing",
    "descendant_count",
    "descendant_trees",
    "enumerate_trees",
    "gf_closed_form",
    "gf_comb",
    "gf_set",
    "gf_single",
    "growth_rate",
    "incomparable_pairs",
    "left_comb",
    "oeis_annotate",
    "parent_tree",
    "parse_tree",
    "perm_contains",
    "perm_to_tree",
    "reflect",
    "render_tree",
    "rf_add",
    "rf_div",
    "rf_mul",
    "rf_sub",
    "right_comb",
    "sequence_brute",
    "series",
    "single_pattern_table",
    "single_patterns",
    "tree_from_index",
    "tree_to_perm",
    "wilf_classify",
]


def main():
    cli()
