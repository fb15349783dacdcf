"""Exact monodromy-factorization calculator for Lefschetz fibrations.

The heavy lifting lives in the C++ extension; this package re-exports its
surface: Word (immutable factorizations with Hurwitz moves, gathering,
fiber sums, lantern walks) and the pipeline entry points.
"""

from lefschetz._core import (
    BudgetError,
    UsageError,
    VerifyError,
    Word,
    base_report,
    closed_form,
    family,
    sequence,
    slope_limit,
    smith_normal_form,
)

__all__ = [
    "BudgetError",
    "UsageError",
    "VerifyError",
    "Word",
    "base_report",
    "closed_form",
    "family",
    "sequence",
    "slope_limit",
    "smith_normal_form",
]
