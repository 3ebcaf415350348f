"""Exact solving and verification for covering sets in dominance graphs.

The package provides:

* dominance graphs with a canonical text format (:mod:`covers.graph`);
* upward/downward covering relations and covering-set tests
  (:mod:`covers.covering`);
* exact, budgeted solvers for decision and search problems about
  inclusion-minimal and minimum-size covering sets (:mod:`covers.solver`);
* CNF-to-dominance-graph gadget constructions and preference-profile
  realization (:mod:`covers.reductions`);
* a claim-verification harness comparing solver results on gadget graphs
  against independent SAT brute force (:mod:`covers.harness`).
"""

from .budgets import SolverBudget
from .covering import (
    Direction,
    covers,
    is_covering_set,
    is_minimal_covering_set,
    mandatory_alternatives,
    reverse,
    uncovered_set,
)
from .errors import ParseError, ResourceError, ValidationError
from .harness import (
    CLAIM_IDS,
    ClaimReport,
    brute_force_sat,
    random_cnf,
    verify_claim,
)
from .graph import (
    MAX_ALTERNATIVES,
    Alternative,
    DominanceGraph,
    dominated_by,
    dominators,
    induced_subgraph,
    new_graph,
    parse_graph,
    serialize_graph,
)
from .solver import (
    Exists,
    Find,
    Member,
    MemberAll,
    Notion,
    ProblemKind,
    Size,
    SolveAnswer,
    SolveStats,
    TestSet,
    Unique,
    decide,
    enumerate_covering_sets,
    minimal_covering_sets,
    minimum_size_covering_sets,
)

__version__ = "0.1.0"

__all__ = [
    "SolverBudget",
    "Direction",
    "covers",
    "is_covering_set",
    "is_minimal_covering_set",
    "mandatory_alternatives",
    "reverse",
    "uncovered_set",
    "ParseError",
    "ResourceError",
    "ValidationError",
    "CLAIM_IDS",
    "ClaimReport",
    "brute_force_sat",
    "random_cnf",
    "verify_claim",
    "MAX_ALTERNATIVES",
    "Alternative",
    "DominanceGraph",
    "dominated_by",
    "dominators",
    "induced_subgraph",
    "new_graph",
    "parse_graph",
    "serialize_graph",
    "Exists",
    "Find",
    "Member",
    "MemberAll",
    "Notion",
    "ProblemKind",
    "Size",
    "SolveAnswer",
    "SolveStats",
    "TestSet",
    "Unique",
    "decide",
    "enumerate_covering_sets",
    "minimal_covering_sets",
    "minimum_size_covering_sets",
    "__version__",
]
