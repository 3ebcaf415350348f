"""CNF handling, gadget-graph constructions, and preference profiles."""

from .builders import (
    CONSTRUCTION_IDS,
    DEFAULT_MAX_ALTERNATIVES,
    ReductionOutput,
    build_cons1,
    build_cons3,
    build_cons5,
    build_cons6,
    build_thm3,
    build_thm9,
)
from .cnf import (
    CNF,
    FormulaProperties,
    check_formula_properties,
    evaluate,
    falsified_count,
    new_cnf,
    normalize_formula,
    parse_dimacs,
    serialize_dimacs,
)
from .profiles import (
    PreferenceProfile,
    majority_graph,
    mcgarvey_profile,
    new_profile,
    profile_from_dict,
    profile_to_dict,
)

__all__ = [
    "CONSTRUCTION_IDS",
    "DEFAULT_MAX_ALTERNATIVES",
    "ReductionOutput",
    "build_cons1",
    "build_cons3",
    "build_cons5",
    "build_cons6",
    "build_thm3",
    "build_thm9",
    "CNF",
    "FormulaProperties",
    "check_formula_properties",
    "evaluate",
    "falsified_count",
    "new_cnf",
    "normalize_formula",
    "parse_dimacs",
    "serialize_dimacs",
    "PreferenceProfile",
    "majority_graph",
    "mcgarvey_profile",
    "new_profile",
    "profile_from_dict",
    "profile_to_dict",
]
