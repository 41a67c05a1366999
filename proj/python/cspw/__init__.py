"""Exact counting-CSP partition functions over cyclotomic fields."""

from ._core import (
    BudgetExceeded,
    CycloValue,
    Error,
    Instance,
    MaltsevMap,
    ParseError,
    TypePartitionViolation,
    Unsupported,
    brute_force_Z,
    check_conditions,
    closure,
    eliminate_Z,
    search_phi,
    solve,
    split_parts,
    value_counts,
    value_histogram,
)

__all__ = [
    "BudgetExceeded",
    "CycloValue",
    "Error",
    "Instance",
    "MaltsevMap",
    "ParseError",
    "TypePartitionViolation",
    "Unsupported",
    "brute_force_Z",
    "check_conditions",
    "closure",
    "eliminate_Z",
    "search_phi",
    "solve",
    "split_parts",
    "value_counts",
    "value_histogram",
]
