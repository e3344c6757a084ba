"""Stable, run-adaptive mergesort with 2-way and 4-way merge policies.

The public sorting surface is ``stable_sort`` / ``stable_sort_with``; the
submodules expose the building blocks (run detection, boundary powers, the
merge kernels), the reference oracle, and the benchmark harness.
"""

from .merges import MergeBuffer
from .policy import (
    MIN_RUN_LEN,
    VARIANTS,
    SortConfig,
    merge_cost_for_profile,
    stable_sort,
    stable_sort_with,
)
from .power import node_power, run_stack_capacity
from .runs import Run
from .statskit import (
    SENTINEL,
    CountingOrder,
    SortStats,
    normalized_merge_cost,
    normalized_time,
    scanned_elements_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "MIN_RUN_LEN",
    "MergeBuffer",
    "Run",
    "SENTINEL",
    "CountingOrder",
    "SortConfig",
    "SortStats",
    "VARIANTS",
    "merge_cost_for_profile",
    "node_power",
    "normalized_merge_cost",
    "normalized_time",
    "run_stack_capacity",
    "scanned_elements_estimate",
    "stable_sort",
    "stable_sort_with",
]
