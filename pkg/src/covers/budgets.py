"""Resource budgets for exact subset-search operations."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SolverBudget:
    """Limits for exhaustive search.

    ``max_subsets`` bounds how many candidate subsets may be examined,
    ``max_seconds`` bounds wall-clock time, and ``max_alternatives`` caps the
    number of free alternatives (graph size minus mandatory members) a full
    enumeration may range over.  Exceeding any limit raises
    :class:`covers.errors.ResourceError` — results are never silently
    truncated.
    """

    max_subsets: int = 2**30
    max_seconds: float = 1800.0
    max_alternatives: int = 30
