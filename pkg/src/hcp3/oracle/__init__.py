"""Exact Hamiltonicity search and empirical gadget checks."""

from .checks import (
    FALSE,
    INCONCLUSIVE,
    TRUE,
    Equivalence,
    Verdict,
    admissible_pairs,
    check_equivalence,
    check_gadget_blocking,
    check_gadget_traversal,
    find_path_cover,
)
from .naive import naive_count_hc, naive_has_path
from .search import (
    DEFAULT_BUDGET,
    KERNEL,
    CountResult,
    Outcome,
    SearchBudget,
    SearchResult,
    count_ham_paths,
    count_hc,
    find_hc,
    ham_path,
)

__all__ = [
    "DEFAULT_BUDGET",
    "FALSE",
    "INCONCLUSIVE",
    "KERNEL",
    "TRUE",
    "CountResult",
    "Equivalence",
    "Outcome",
    "SearchBudget",
    "SearchResult",
    "Verdict",
    "admissible_pairs",
    "check_equivalence",
    "check_gadget_blocking",
    "check_gadget_traversal",
    "count_ham_paths",
    "count_hc",
    "find_hc",
    "find_path_cover",
    "ham_path",
    "naive_count_hc",
    "naive_has_path",
]
