"""CNF formulas: validation, DIMACS text form, and exact property checks.

A clause is a tuple of signed variable indices (``3`` for the variable,
``-3`` for its negation).  Clauses keep their given order — constructions
downstream index alternatives by clause position — while literals within a
clause are stored sorted by variable index with duplicates removed.  A
clause containing a variable in both polarities is a tautology and is
rejected.  Empty clauses are rejected unless explicitly allowed (they make
the formula unsatisfiable and are only useful for stress inputs).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import ParseError, ValidationError

_MAX_EXACT_VARIABLES = 24

Assignment = tuple  # of 0/1, entry i-1 giving the value of variable i


@dataclass(frozen=True)
class CNF:
    variable_count: int
    clauses: tuple  # tuple[tuple[int, ...], ...]


def new_cnf(variable_count: int, clauses, allow_empty: bool = False) -> CNF:
    """Validate and canonicalize a clause list into a :class:`CNF`."""
    if variable_count < 0:
        raise ValidationError(f"negative variable count: {variable_count}")
    canonical = []
    for pos, clause in enumerate(clauses, start=1):
        literals = sorted(set(clause), key=lambda lit: (abs(lit), lit))
        if not literals and not allow_empty:
            raise ValidationError(f"clause {pos} is empty")
        seen_vars = set()
        for lit in literals:
            var = abs(lit)
            if lit == 0 or var > variable_count:
                raise ValidationError(
                    f"clause {pos} has out-of-range literal {lit}"
                )
            if var in seen_vars:
                raise ValidationError(
                    f"clause {pos} is a tautology on variable {var}"
                )
            seen_vars.add(var)
        canonical.append(tuple(literals))
    return CNF(variable_count, tuple(canonical))


def parse_dimacs(text: str, allow_empty: bool = False) -> CNF:
    """Parse DIMACS CNF; clause count must match the header."""
    header = None
    literals: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError(lineno, "duplicate DIMACS header")
            tokens = line.split()
            if (len(tokens) != 4 or tokens[1] != "cnf"
                    or not tokens[2].isdigit() or not tokens[3].isdigit()):
                raise ParseError(lineno, "expected header 'p cnf <vars> <clauses>'")
            header = (int(tokens[2]), int(tokens[3]))
            continue
        if header is None:
            raise ParseError(lineno, "clause before DIMACS header")
        for token in line.split():
            try:
                literals.append(int(token))
            except ValueError:
                raise ParseError(lineno, f"invalid literal {token!r}") from None

    if header is None:
        raise ParseError(1, "missing DIMACS header")
    variable_count, clause_count = header

    clauses: list[list[int]] = []
    current: list[int] = []
    for lit in literals:
        if lit == 0:
            clauses.append(current)
            current = []
        else:
            current.append(lit)
    if current:
        raise ValidationError("last clause is not terminated by 0")
    if len(clauses) != clause_count:
        raise ValidationError(
            f"header declares {clause_count} clauses, found {len(clauses)}"
        )
    return new_cnf(variable_count, clauses, allow_empty=allow_empty)


def serialize_dimacs(cnf: CNF) -> str:
    lines = [f"p cnf {cnf.variable_count} {len(cnf.clauses)}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0"
                 for clause in cnf.clauses)
    return "\n".join(lines) + "\n"


def evaluate(cnf: CNF, assignment: Assignment) -> bool:
    """Truth value of the formula under a 0/1 assignment tuple."""
    if len(assignment) != cnf.variable_count:
        raise ValidationError(
            f"assignment has {len(assignment)} values for "
            f"{cnf.variable_count} variables"
        )
    return all(
        any(
            assignment[abs(lit) - 1] == (1 if lit > 0 else 0)
            for lit in clause
        )
        for clause in cnf.clauses
    )


def falsified_count(cnf: CNF, assignment: Assignment) -> int:
    """Number of clauses the assignment leaves unsatisfied."""
    if len(assignment) != cnf.variable_count:
        raise ValidationError(
            f"assignment has {len(assignment)} values for "
            f"{cnf.variable_count} variables"
        )
    return sum(
        0 if any(assignment[abs(lit) - 1] == (1 if lit > 0 else 0)
                 for lit in clause)
        else 1
        for clause in cnf.clauses
    )


@dataclass(frozen=True)
class FormulaProperties:
    """Exact facts about a formula, including the three conditions the
    alternating-chain construction requires of its inputs."""

    satisfiable: bool
    model_count: int
    first_var_free: bool   # some clause lacks variable 1
    min_two_unsat: bool    # satisfiable, or every assignment falsifies >= 2 clauses
    min_two_models: bool   # unsatisfiable, or at least 2 models


def check_formula_properties(cnf: CNF) -> FormulaProperties:
    """Exhaustive property check; limited to 24 variables."""
    if cnf.variable_count > _MAX_EXACT_VARIABLES:
        raise ValidationError(
            f"exact property check is limited to {_MAX_EXACT_VARIABLES} "
            f"variables, got {cnf.variable_count}"
        )
    model_count = 0
    least_falsified = len(cnf.clauses) + 1
    for assignment in itertools.product((0, 1), repeat=cnf.variable_count):
        falsified = falsified_count(cnf, assignment)
        if falsified == 0:
            model_count += 1
        else:
            least_falsified = min(least_falsified, falsified)
    satisfiable = model_count > 0
    first_var_free = any(
        all(abs(lit) != 1 for lit in clause) for clause in cnf.clauses
    )
    min_two_unsat = satisfiable or least_falsified >= 2
    min_two_models = not satisfiable or model_count >= 2
    return FormulaProperties(
        satisfiable=satisfiable,
        model_count=model_count,
        first_var_free=first_var_free,
        min_two_unsat=min_two_unsat,
        min_two_models=min_two_models,
    )


def normalize_formula(
    cnf: CNF,
    *,
    min_two_unsat: bool = False,
    min_two_models: bool = False,
    first_var_free: bool = False,
) -> CNF:
    """Rewrite a formula to satisfy the requested conditions while preserving
    satisfiability; conditions already met leave the formula untouched.

    Duplicating every clause fixes ``min_two_unsat``; prepending a fresh
    variable (shifting indices up) fixes ``first_var_free``; appending a
    fresh variable fixes ``min_two_models`` when no variable was prepended
    (a fresh variable already doubles the model count).  A formula with no
    clauses can never satisfy ``first_var_free`` and is returned with the
    other requested fixes only.
    """
    properties = check_formula_properties(cnf)
    clauses = list(cnf.clauses)
    variable_count = cnf.variable_count
    if min_two_unsat and not properties.min_two_unsat:
        clauses = [c for clause in clauses for c in (clause, clause)]
    if first_var_free and clauses and not properties.first_var_free:
        variable_count += 1
        clauses = [
            tuple(lit + 1 if lit > 0 else lit - 1 for lit in clause)
            for clause in clauses
        ]
    elif min_two_models and not properties.min_two_models:
        variable_count += 1
    return new_cnf(variable_count, clauses, allow_empty=True)
