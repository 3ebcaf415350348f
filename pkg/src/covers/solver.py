"""Exact solving of covering-set problems by exhaustive subset search.

Every operation is deterministic: candidate sets are visited in ascending
cardinality and, within a cardinality, ties are resolved lexicographically by
the graph's alternative order.  The only pruning applied in general is the
mandatory rule: an alternative nobody dominates is never covered, so it
belongs to every covering set and search may range over the remaining
("free") alternatives only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import _engine
from .budgets import SolverBudget
from .covering import (
    Direction,
    _minimality_scan,
    is_covering_set,
    mandatory_alternatives,
)
from .errors import ResourceError, ValidationError
from .graph import Alternative, DominanceGraph

__all__ = [
    "Notion",
    "Size",
    "Member",
    "MemberAll",
    "Unique",
    "TestSet",
    "Find",
    "Exists",
    "ProblemKind",
    "SolverBudget",
    "SolveStats",
    "SolveAnswer",
    "mandatory_alternatives",
    "enumerate_covering_sets",
    "minimal_covering_sets",
    "minimum_size_covering_sets",
    "decide",
]

_MAX_MATERIALIZED = 1 << 20


class Notion(enum.Enum):
    INCLUSION_MINIMAL = "minimal"
    MINIMUM_SIZE = "minimum-size"


@dataclass(frozen=True)
class Size:
    """Is there a solution of size at most k?  (k must be positive.)"""

    k: int


@dataclass(frozen=True)
class Member:
    """Does some solution contain the given alternative?"""

    alternative: "Alternative | str"


@dataclass(frozen=True)
class MemberAll:
    """Do all solutions contain the given alternative?"""

    alternative: "Alternative | str"


@dataclass(frozen=True)
class Unique:
    """Is there exactly one solution?"""


@dataclass(frozen=True, init=False)
class TestSet:
    """Is the given set a solution?"""

    __test__ = False  # not a test-framework class, despite the name

    members: tuple

    def __init__(self, members):
        object.__setattr__(self, "members", tuple(members))


@dataclass(frozen=True)
class Find:
    """Return the first solution in search order, if any."""


@dataclass(frozen=True)
class Exists:
    """Is there any covering set at all?"""


ProblemKind = Size | Member | MemberAll | Unique | TestSet | Find | Exists


@dataclass
class SolveStats:
    subsets_examined: int
    wall_seconds: float
    budget: SolverBudget
    vacuous: bool = False


@dataclass
class SolveAnswer:
    verdict: "bool | None"
    witness: "frozenset[Alternative] | None"
    all_solutions: "tuple[frozenset[Alternative], ...] | None"
    stats: SolveStats


# --------------------------------------------------------------------------
# shared machinery


def _mask_key(mask: int) -> tuple:
    positions = []
    i = 0
    m = mask
    while m:
        if m & 1:
            positions.append(i)
        m >>= 1
        i += 1
    return (len(positions), tuple(positions))


def _sorted_masks(masks) -> list[int]:
    return sorted(masks, key=_mask_key)


def _minimal_elements(masks) -> list[int]:
    """Inclusion-minimal members of a family, in (cardinality, lex) order."""
    kept: list[int] = []
    for m in _sorted_masks(masks):
        if not any(s & m == s for s in kept):
            kept.append(m)
    return kept


@dataclass
class _Search:
    graph: DominanceGraph
    direction: Direction
    budget: SolverBudget
    arrays: _engine.CoverArrays = field(init=False)
    tracker: _engine.BudgetTracker = field(init=False)
    base: int = field(init=False)
    positions: list = field(init=False)

    def __post_init__(self):
        self.arrays = _engine.build_arrays(self.graph, self.direction)
        self.tracker = _engine.BudgetTracker.from_budget(self.budget)
        forced = self.graph.member_mask(mandatory_alternatives(self.graph))
        self.base = forced
        self.positions = [
            i for i in range(self.graph.size) if not forced >> i & 1
        ]

    def require_enumeration_cap(self):
        k = len(self.positions)
        if k > self.budget.max_alternatives:
            raise ResourceError(
                f"{k} free alternatives exceed the full-enumeration cap of "
                f"{self.budget.max_alternatives}"
            )

    def scan_all(self) -> list[int]:
        self.require_enumeration_cap()
        return _engine.scan_counter(
            self.arrays, self.base, self.positions, self.tracker,
            max_hits=_MAX_MATERIALIZED,
        )

    def first_nonempty_class(
        self, max_card: "int | None" = None, stop_on_first: bool = False
    ) -> "tuple[int | None, list[int]]":
        """Scan cardinality classes of free members in ascending order;
        return (class, hits) for the first class containing a covering set,
        or (None, []) when none exists up to ``max_card``."""
        self.require_enumeration_cap()
        top = len(self.positions)
        if max_card is not None:
            top = min(top, max_card)
        for card in range(top + 1):
            hits = _engine.scan_class(
                self.arrays, self.base, self.positions, card, self.tracker,
                max_hits=_MAX_MATERIALIZED, stop_on_first=stop_on_first,
            )
            if hits:
                return card, hits
        return None, []

    def stats(self, vacuous: bool = False) -> SolveStats:
        return SolveStats(
            subsets_examined=self.tracker.examined,
            wall_seconds=self.tracker.elapsed(),
            budget=self.budget,
            vacuous=vacuous,
        )

    def sets(self, masks) -> list[frozenset]:
        return [self.graph.mask_members(m) for m in masks]


def _notion_family(search: _Search, notion: Notion) -> list[int]:
    if notion is Notion.MINIMUM_SIZE:
        _, hits = search.first_nonempty_class()
        return _sorted_masks(hits)
    return _minimal_elements(search.scan_all())


# --------------------------------------------------------------------------
# public operations


def enumerate_covering_sets(graph: DominanceGraph,
                            direction: Direction = Direction.UPWARD,
                            budget: "SolverBudget | None" = None) -> list[frozenset]:
    """All covering sets, ascending cardinality then lexicographic."""
    search = _Search(graph, direction, budget or SolverBudget())
    return search.sets(_sorted_masks(search.scan_all()))


def minimal_covering_sets(graph: DominanceGraph,
                          direction: Direction = Direction.UPWARD,
                          budget: "SolverBudget | None" = None) -> list[frozenset]:
    """The inclusion-minimal covering sets, in enumeration order."""
    search = _Search(graph, direction, budget or SolverBudget())
    return search.sets(_minimal_elements(search.scan_all()))


def minimum_size_covering_sets(graph: DominanceGraph,
                               direction: Direction = Direction.UPWARD,
                               budget: "SolverBudget | None" = None) -> list[frozenset]:
    """All covering sets of least cardinality (empty list when none exist).

    Stops at the first cardinality level that contains a covering set.
    """
    search = _Search(graph, direction, budget or SolverBudget())
    _, hits = search.first_nonempty_class()
    return search.sets(_sorted_masks(hits))


def decide(graph: DominanceGraph, direction: Direction, notion: Notion,
           problem: ProblemKind,
           budget: "SolverBudget | None" = None) -> SolveAnswer:
    """Answer one decision/search problem about the graph's covering sets."""
    budget = budget or SolverBudget()
    search = _Search(graph, direction, budget)

    if isinstance(problem, Size):
        if problem.k <= 0:
            raise ValidationError(f"size bound must be positive, got {problem.k}")
        max_card = problem.k - search.base.bit_count()
        if max_card < 0:
            return SolveAnswer(False, None, None, search.stats())
        card, hits = search.first_nonempty_class(max_card=max_card)
        if card is None:
            return SolveAnswer(False, None, None, search.stats())
        best = _sorted_masks(hits)[0]
        return SolveAnswer(True, graph.mask_members(best), None, search.stats())

    if isinstance(problem, (Find, Exists)):
        card, hits = search.first_nonempty_class()
        if card is None:
            verdict = None if isinstance(problem, Find) else False
            return SolveAnswer(verdict, None, None, search.stats())
        best = _sorted_masks(hits)[0]
        return SolveAnswer(True, graph.mask_members(best), None, search.stats())

    if isinstance(problem, (Member, MemberAll)):
        target = graph.index_of(problem.alternative)
        family = _notion_family(search, notion)
        containing = [m for m in family if m >> target & 1]
        solutions = tuple(search.sets(family))
        if isinstance(problem, Member):
            verdict = bool(containing)
            witness = graph.mask_members(containing[0]) if containing else None
            return SolveAnswer(verdict, witness, solutions, search.stats())
        if not family:
            return SolveAnswer(False, None, solutions, search.stats(vacuous=True))
        verdict = len(containing) == len(family)
        witness = graph.mask_members(family[0]) if verdict else None
        return SolveAnswer(verdict, witness, solutions, search.stats())

    if isinstance(problem, Unique):
        family = _notion_family(search, notion)
        verdict = len(family) == 1
        witness = graph.mask_members(family[0]) if verdict else None
        return SolveAnswer(verdict, witness, tuple(search.sets(family)),
                           search.stats())

    if isinstance(problem, TestSet):
        members = frozenset(
            m if isinstance(m, Alternative) else Alternative(m)
            for m in problem.members
        )
        m_mask = graph.member_mask(members)
        if not is_covering_set(graph, members, direction):
            return SolveAnswer(False, None, None, search.stats())
        if notion is Notion.INCLUSION_MINIMAL:
            verdict = _minimality_scan(
                graph, m_mask, search.direction, budget,
                search.arrays, search.tracker,
            )
        else:
            max_card = m_mask.bit_count() - search.base.bit_count() - 1
            card, _ = search.first_nonempty_class(
                max_card=max_card, stop_on_first=True
            )
            verdict = card is None
        witness = members if verdict else None
        return SolveAnswer(verdict, witness, None, search.stats())

    raise ValidationError(f"unknown problem kind: {problem!r}")
