"""Near-graceful tree labelling."""

from ._neargrace import (
    Tree,
    check_report,
    enumerate_trees,
    gen_family,
    gracesize_of,
    interval_matching,
    is_graceful,
    near_graceful,
    parse_tree,
    random_tree,
    solve_graceful,
)

__all__ = [
    "Tree",
    "check_report",
    "enumerate_trees",
    "gen_family",
    "gracesize_of",
    "interval_matching",
    "is_graceful",
    "near_graceful",
    "parse_tree",
    "random_tree",
    "solve_graceful",
]
