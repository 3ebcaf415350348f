"""Covering relations and covering sets in dominance graphs.

All notions are relative to a reference set B of alternatives:

* x *upward* covers y in B iff x > y and every z in B with z > x also has
  z > y (x's dominators within B are a subset of y's).
* x *downward* covers y in B iff x > y and every z in B with y > z also has
  x > z (y's dominated alternatives within B are a subset of x's).

A set M is a covering set iff it is internally stable (no member is covered
by another member, with M itself as reference set) and externally stable
(every outside alternative x is covered by some member within M plus x).
"""

from __future__ import annotations

import enum

from .budgets import SolverBudget
from .errors import ResourceError, ValidationError
from .graph import Alternative, DominanceGraph, new_graph

__all__ = [
    "Direction",
    "covers",
    "uncovered_set",
    "is_covering_set",
    "is_minimal_covering_set",
    "mandatory_alternatives",
    "reverse",
]


class Direction(enum.Enum):
    UPWARD = "up"
    DOWNWARD = "down"


def reverse(graph: DominanceGraph) -> DominanceGraph:
    """The graph with every dominance edge flipped."""
    return new_graph(graph.alternatives, [(v, u) for u, v in graph.edges])


def _member_mask_strict(graph: DominanceGraph, members) -> int:
    return graph.member_mask(members)


def covers(graph: DominanceGraph, within, x, y, direction: Direction) -> bool:
    """Whether x covers y relative to the reference set ``within``.

    Both x and y must belong to ``within``.  Never true for x == y.
    """
    xi = graph.index_of(x)
    yi = graph.index_of(y)
    b_mask = _member_mask_strict(graph, within)
    for i in (xi, yi):
        if not b_mask >> i & 1:
            raise ValidationError(
                f"alternative {graph.alternatives[i].id} is not in the reference set"
            )
    if not graph.dominated_mask(xi) >> yi & 1:
        return False
    if direction is Direction.UPWARD:
        violators = graph.dominator_mask(xi) & ~graph.dominator_mask(yi)
    else:
        violators = graph.dominated_mask(yi) & ~graph.dominated_mask(xi)
    return b_mask & violators == 0


def _covered_in(graph: DominanceGraph, b_mask: int, xi: int,
                direction: Direction) -> bool:
    """Whether some member of b_mask covers alternative xi, with b_mask | {xi}
    as the reference set (the extra bit never affects the test)."""
    up = direction is Direction.UPWARD
    dominators = graph.dominator_mask(xi) & b_mask
    while dominators:
        low = dominators & -dominators
        yi = low.bit_length() - 1
        dominators ^= low
        if up:
            violators = graph.dominator_mask(yi) & ~graph.dominator_mask(xi)
        else:
            violators = graph.dominated_mask(xi) & ~graph.dominated_mask(yi)
        if b_mask & violators == 0:
            return True
    return False


def uncovered_set(graph: DominanceGraph, within=None,
                  direction: Direction = Direction.UPWARD) -> frozenset[Alternative]:
    """The members of ``within`` (default: all alternatives) not covered by
    any other member of ``within``."""
    b_mask = (
        (1 << graph.size) - 1 if within is None
        else _member_mask_strict(graph, within)
    )
    result = 0
    remaining = b_mask
    while remaining:
        low = remaining & -remaining
        xi = low.bit_length() - 1
        remaining ^= low
        if not _covered_in(graph, b_mask, xi, direction):
            result |= low
    return graph.mask_members(result)


def _is_covering_mask(graph: DominanceGraph, s_mask: int,
                      direction: Direction) -> bool:
    for xi in range(graph.size):
        inside = bool(s_mask >> xi & 1)
        if _covered_in(graph, s_mask, xi, direction) == inside:
            return False
    return True


def is_covering_set(graph: DominanceGraph, members,
                    direction: Direction = Direction.UPWARD) -> bool:
    """Internal plus external stability of ``members`` within the graph."""
    return _is_covering_mask(graph, _member_mask_strict(graph, members), direction)


def mandatory_alternatives(graph: DominanceGraph) -> frozenset[Alternative]:
    """Alternatives with no dominator; they belong to every covering set."""
    return frozenset(
        a for i, a in enumerate(graph.alternatives)
        if graph.dominator_mask(i) == 0
    )


def _minimality_scan(graph: DominanceGraph, m_mask: int, direction: Direction,
                     budget: SolverBudget, arrays=None, tracker=None) -> bool:
    """Whether the covering set ``m_mask`` has no covering proper subset.

    Proper subsets are scanned in descending cardinality with mandatory
    alternatives forced in (subsets omitting one can never cover).  Assumes
    ``m_mask`` itself is covering.  ``arrays``/``tracker`` let a caller share
    precomputed tables and budget accounting.
    """
    from . import _engine  # local import: engine depends on this module's enums

    forced = graph.member_mask(mandatory_alternatives(graph))  # subset of m_mask here
    free_positions = [i for i in range(graph.size) if (m_mask & ~forced) >> i & 1]
    k = len(free_positions)
    if k == 0:
        return True
    if 1 << k > budget.max_subsets:
        raise ResourceError(
            f"minimality check needs 2^{k} subsets, over the budget "
            f"of {budget.max_subsets}"
        )
    if arrays is None:
        arrays = _engine.build_arrays(graph, direction)
    if tracker is None:
        tracker = _engine.BudgetTracker.from_budget(budget)
    for card in range(k - 1, -1, -1):
        hits = _engine.scan_class(
            arrays, forced, free_positions, card, tracker,
            max_hits=1, stop_on_first=True,
        )
        if hits:
            return False
    return True


def is_minimal_covering_set(graph: DominanceGraph, members,
                            direction: Direction = Direction.UPWARD,
                            budget: SolverBudget | None = None) -> bool:
    """Whether ``members`` is a covering set with no covering proper subset.

    Raises :class:`ResourceError` when the proper-subset scan would exceed
    the budget.
    """
    budget = budget or SolverBudget()
    m_mask = _member_mask_strict(graph, members)
    if not _is_covering_mask(graph, m_mask, direction):
        return False
    return _minimality_scan(graph, m_mask, direction, budget)
