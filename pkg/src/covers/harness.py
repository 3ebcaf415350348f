"""Mechanical verification of the gadget constructions' guarantees.

Each registered claim pairs a brute-force satisfiability fact about the input
formula(s) with a covering-set fact computed by the exact solver on the
corresponding gadget graph, and checks that the two sides agree.  The SAT
side always comes from :func:`brute_force_sat` — an independent exhaustive
scan — never from structural knowledge of the construction.

Verification produces a :class:`ClaimReport` with a ``pass``/``fail``/
``skipped-budget`` verdict; budget exhaustion is reported, never folded into
a pass.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .budgets import SolverBudget
from .covering import Direction, is_covering_set
from .errors import ResourceError, ValidationError
from .graph import MAX_ALTERNATIVES, induced_subgraph
from .reductions import (
    CNF,
    build_cons1,
    build_cons3,
    build_cons5,
    build_cons6,
    build_thm3,
    build_thm9,
    new_cnf,
    serialize_dimacs,
)
from .solver import (
    Member,
    Notion,
    TestSet,
    decide,
    minimal_covering_sets,
    minimum_size_covering_sets,
)

__all__ = [
    "CLAIM_IDS",
    "ClaimReport",
    "brute_force_sat",
    "random_cnf",
    "verify_claim",
]

_MAX_BRUTE_FORCE_VARIABLES = 24


# --------------------------------------------------------------------------
# independent SAT oracle and instance generator


def _clause_satisfied(clause, assignment) -> bool:
    return any(
        assignment[abs(lit) - 1] == (1 if lit > 0 else 0) for lit in clause
    )


def brute_force_sat(cnf: CNF) -> list[tuple[int, ...]]:
    """All satisfying assignments, in lexicographic order (0 before 1).

    Exhaustive and self-contained: clauses are evaluated directly here so the
    harness does not depend on the formula type's own evaluator.
    """
    if cnf.variable_count > _MAX_BRUTE_FORCE_VARIABLES:
        raise ValidationError(
            f"brute-force satisfiability is limited to "
            f"{_MAX_BRUTE_FORCE_VARIABLES} variables, got {cnf.variable_count}"
        )
    return [
        assignment
        for assignment in itertools.product((0, 1), repeat=cnf.variable_count)
        if all(_clause_satisfied(clause, assignment) for clause in cnf.clauses)
    ]


def random_cnf(variables: int, clauses: int, literals_per_clause: int,
               seed: int) -> CNF:
    """A seeded random formula with distinct variables per clause (hence no
    tautologies).  Deterministic for a given seed."""
    if variables < 1 or clauses < 1 or literals_per_clause < 1:
        raise ValidationError("variables, clauses, and literals per clause "
                              "must all be positive")
    if variables > _MAX_BRUTE_FORCE_VARIABLES:
        raise ValidationError(
            f"random formulas are limited to {_MAX_BRUTE_FORCE_VARIABLES} "
            f"variables, got {variables}"
        )
    if literals_per_clause > variables:
        raise ValidationError(
            f"cannot place {literals_per_clause} distinct variables in a "
            f"clause over {variables} variables without a tautology"
        )
    rng = random.Random(seed)
    built = []
    for _ in range(clauses):
        chosen = rng.sample(range(1, variables + 1), literals_per_clause)
        built.append(tuple(
            var if rng.random() < 0.5 else -var for var in chosen
        ))
    return new_cnf(variables, built)


# --------------------------------------------------------------------------
# reports


@dataclass
class ClaimReport:
    claim_id: str
    instance: str
    verdict: str  # "pass" | "fail" | "skipped-budget"
    evidence: dict
    wall_seconds: float

    def to_dict(self) -> dict:
        return {
            "claim": self.claim_id,
            "instance": self.instance,
            "verdict": self.verdict,
            "evidence": self.evidence,
            "wall_seconds": round(self.wall_seconds, 6),
        }


def _describe(cnf: CNF) -> str:
    return serialize_dimacs(cnf).strip().replace("\n", " | ")


def _names(members) -> list[str]:
    return sorted(a.id for a in members)


def _family_names(family) -> list[list[str]]:
    return [_names(m) for m in family]


# --------------------------------------------------------------------------
# shared claim machinery


def _component_members(output, position: int) -> list:
    """Alternatives of one chained component, read off the label map.

    Composite labels suffix every component role with its position;
    connector roles (r/s/t and the starred pair) belong to no component.
    """
    members = []
    for role, alt in output.labels.items():
        if role in ("c_star", "d_star"):
            continue
        base, _, pos = role.rpartition("_")
        if not base or not pos.isdigit() or base in ("r", "s", "t"):
            continue
        if int(pos) == position:
            members.append(alt)
    return members


def _contains_some(minimal_subfamily, superset) -> bool:
    return any(candidate <= superset for candidate in minimal_subfamily)


def _require_model_margin(claim_id: str, models: list) -> None:
    if len(models) == 1:
        raise ValidationError(
            f"{claim_id} requires at least two satisfying assignments when "
            "the formula is satisfiable, got exactly one"
        )


# --------------------------------------------------------------------------
# claim evaluators — each returns (ok, evidence)


def _claim1(cnf: CNF, budget: SolverBudget):
    output = build_cons1(cnf, max_alternatives=MAX_ALTERNATIVES)
    graph = output.graph
    family = minimal_covering_sets(graph, Direction.UPWARD, budget)
    clause_count = len(cnf.clauses)
    e_alts = {output.labels[f"e_{j}"] for j in range(1, clause_count + 1)}
    everything = frozenset(graph.alternatives)
    offenders = [m for m in family
                 if m & e_alts and m != everything]
    evidence = {
        "family_size": len(family),
        "sets_containing_e": sum(1 for m in family if m & e_alts),
    }
    if offenders:
        evidence["counterexample"] = {"set": _names(offenders[0])}
    return not offenders, evidence


def _claim2(cnf: CNF, budget: SolverBudget):
    output = build_cons1(cnf, max_alternatives=MAX_ALTERNATIVES)
    family = minimal_covering_sets(output.graph, Direction.UPWARD, budget)
    models = brute_force_sat(cnf)
    clause_count = len(cnf.clauses)
    e_alts = {output.labels[f"e_{j}"] for j in range(1, clause_count + 1)}
    with_e = [m for m in family if m & e_alts]
    ok = bool(models) == (not with_e)
    evidence = {
        "satisfiable": bool(models),
        "model_count": len(models),
        "family_size": len(family),
        "sets_containing_e": len(with_e),
    }
    if not ok and with_e:
        evidence["counterexample"] = {"set": _names(with_e[0])}
    return ok, evidence


def _claim3(cnf: CNF, budget: SolverBudget):
    models = brute_force_sat(cnf)
    _require_model_margin("CLAIM3", models)
    output = build_cons1(cnf, max_alternatives=MAX_ALTERNATIVES)
    family = minimal_covering_sets(output.graph, Direction.UPWARD, budget)
    ok = (not models) == (len(family) == 1)
    evidence = {
        "satisfiable": bool(models),
        "model_count": len(models),
        "family_size": len(family),
    }
    if not ok:
        evidence["counterexample"] = {"family": _family_names(family[:4])}
    return ok, evidence


def _pair_subgraph(output, pair: int):
    members = _component_members(output, 2 * pair - 1) + _component_members(
        output, 2 * pair
    )
    return induced_subgraph(output.graph, members)


def _claim4(cnfs, budget: SolverBudget):
    output = build_cons3(cnfs, max_alternatives=MAX_ALTERNATIVES)
    pairs = len(cnfs) // 2
    results = []
    ok = True
    evidence: dict = {"pairs": []}
    for i in range(1, pairs + 1):
        sub = _pair_subgraph(output, i)
        target = output.labels[f"d_{2 * i - 1}"]
        answer = decide(sub, Direction.UPWARD, Notion.INCLUSION_MINIMAL,
                        Member(target), budget)
        odd_sat = bool(brute_force_sat(cnfs[2 * i - 2]))
        even_sat = bool(brute_force_sat(cnfs[2 * i - 1]))
        expected = odd_sat and not even_sat
        agreed = answer.verdict == expected
        ok = ok and agreed
        entry = {
            "pair": i,
            "member_verdict": answer.verdict,
            "expected": expected,
            "odd_satisfiable": odd_sat,
            "even_satisfiable": even_sat,
        }
        if not agreed:
            entry["counterexample"] = {
                "subgraph_size": sub.size,
                "target": target.id,
            }
        results.append(entry)
    evidence["pairs"] = results
    return ok, evidence


def _claim5(cnfs, budget: SolverBudget):
    output = build_cons3(cnfs, max_alternatives=MAX_ALTERNATIVES)
    family = minimal_covering_sets(output.graph, Direction.UPWARD, budget)
    pairs = len(cnfs) // 2
    ok = True
    evidence: dict = {"family_size": len(family), "pairs": []}
    for i in range(1, pairs + 1):
        sub = _pair_subgraph(output, i)
        sub_family = minimal_covering_sets(sub, Direction.UPWARD, budget)
        missing = [m for m in family
                   if not _contains_some(sub_family, m)]
        agreed = not missing
        ok = ok and agreed
        entry = {"pair": i, "pair_family_size": len(sub_family)}
        if missing:
            entry["counterexample"] = {"set": _names(missing[0])}
        evidence["pairs"].append(entry)
    return ok, evidence


def _odd_sat_count(cnfs) -> tuple[bool, list[bool]]:
    flags = [bool(brute_force_sat(f)) for f in cnfs]
    return sum(flags) % 2 == 1, flags


def _claim6(cnfs, budget: SolverBudget):
    output = build_cons3(cnfs, max_alternatives=MAX_ALTERNATIVES)
    odd, flags = _odd_sat_count(cnfs)
    answer = decide(output.graph, Direction.UPWARD, Notion.INCLUSION_MINIMAL,
                    Member(output.labels["d_1"]), budget)
    ok = answer.verdict == odd
    evidence = {
        "satisfiable_flags": flags,
        "odd": odd,
        "member_verdict": answer.verdict,
    }
    if answer.witness is not None:
        evidence["witness"] = _names(answer.witness)
    return ok, evidence


def _claim7(cnf: CNF, budget: SolverBudget):
    output = build_cons5(cnf, max_alternatives=MAX_ALTERNATIVES)
    everything = frozenset(output.graph.alternatives)
    ok = is_covering_set(output.graph, everything, Direction.DOWNWARD)
    return ok, {"alternatives": output.graph.size}


def _claim8(cnf: CNF, budget: SolverBudget):
    output = build_cons5(cnf, max_alternatives=MAX_ALTERNATIVES)
    graph = output.graph
    family = minimal_covering_sets(graph, Direction.DOWNWARD, budget)
    d = output.labels["d"]
    everything = frozenset(graph.alternatives)
    offenders = [m for m in family if d in m and m != everything]
    evidence = {
        "family_size": len(family),
        "sets_containing_d": sum(1 for m in family if d in m),
    }
    if offenders:
        evidence["counterexample"] = {"set": _names(offenders[0])}
    return not offenders, evidence


def _claim9(cnf: CNF, budget: SolverBudget):
    output = build_cons5(cnf, max_alternatives=MAX_ALTERNATIVES)
    family = minimal_covering_sets(output.graph, Direction.DOWNWARD, budget)
    models = brute_force_sat(cnf)
    d = output.labels["d"]
    with_d = [m for m in family if d in m]
    ok = bool(models) == (not with_d)
    evidence = {
        "satisfiable": bool(models),
        "model_count": len(models),
        "family_size": len(family),
        "sets_containing_d": len(with_d),
    }
    if not ok and with_d:
        evidence["counterexample"] = {"set": _names(with_d[0])}
    return ok, evidence


def _claim10(cnf: CNF, budget: SolverBudget):
    models = brute_force_sat(cnf)
    _require_model_margin("CLAIM10", models)
    output = build_cons5(cnf, max_alternatives=MAX_ALTERNATIVES)
    family = minimal_covering_sets(output.graph, Direction.DOWNWARD, budget)
    ok = (not models) == (len(family) == 1)
    evidence = {
        "satisfiable": bool(models),
        "model_count": len(models),
        "family_size": len(family),
    }
    if not ok:
        evidence["counterexample"] = {"family": _family_names(family[:4])}
    return ok, evidence


def _claim11(cnfs, budget: SolverBudget):
    output = build_cons6(cnfs, max_alternatives=MAX_ALTERNATIVES)
    family = minimal_covering_sets(output.graph, Direction.DOWNWARD, budget)
    ok = True
    evidence: dict = {"family_size": len(family), "components": []}
    for i in range(1, len(cnfs) + 1):
        sub = induced_subgraph(output.graph, _component_members(output, i))
        sub_family = minimal_covering_sets(sub, Direction.DOWNWARD, budget)
        missing = [m for m in family if not _contains_some(sub_family, m)]
        agreed = not missing
        ok = ok and agreed
        entry = {"component": i, "component_family_size": len(sub_family)}
        if missing:
            entry["counterexample"] = {"set": _names(missing[0])}
        evidence["components"].append(entry)
    return ok, evidence


def _parity_up(cnfs, budget: SolverBudget):
    output = build_cons3(cnfs, max_alternatives=MAX_ALTERNATIVES)
    odd, flags = _odd_sat_count(cnfs)
    d1 = output.labels["d_1"]
    minimal = decide(output.graph, Direction.UPWARD, Notion.INCLUSION_MINIMAL,
                     Member(d1), budget)
    smallest = decide(output.graph, Direction.UPWARD, Notion.MINIMUM_SIZE,
                      Member(d1), budget)
    ok = minimal.verdict == odd and smallest.verdict == odd
    evidence = {
        "satisfiable_flags": flags,
        "odd": odd,
        "member_minimal": minimal.verdict,
        "member_minimum_size": smallest.verdict,
    }
    if minimal.witness is not None:
        evidence["witness"] = _names(minimal.witness)
    return ok, evidence


def _parity_down(cnfs, budget: SolverBudget):
    output = build_cons6(cnfs, max_alternatives=MAX_ALTERNATIVES)
    odd, flags = _odd_sat_count(cnfs)
    answer = decide(output.graph, Direction.DOWNWARD,
                    Notion.INCLUSION_MINIMAL,
                    Member(output.labels["d_star"]), budget)
    ok = answer.verdict == odd
    evidence = {
        "satisfiable_flags": flags,
        "odd": odd,
        "member_verdict": answer.verdict,
    }
    if answer.witness is not None:
        evidence["witness"] = _names(answer.witness)
    return ok, evidence


def _size_2n1(cnf: CNF, budget: SolverBudget):
    # precondition: every assignment that is not a model must falsify at
    # least two clauses (checked independently of the formula helpers).
    # A non-model falsifying a single clause would yield a covering set of
    # the target size that omits the decision alternative.
    models = brute_force_sat(cnf)
    for assignment in itertools.product((0, 1), repeat=cnf.variable_count):
        falsified = sum(
            1 for clause in cnf.clauses
            if not _clause_satisfied(clause, assignment)
        )
        if falsified == 1:
            raise ValidationError(
                "SIZE_2N1 requires every non-model assignment to falsify "
                "at least two clauses"
            )
    output = build_thm3(cnf, max_alternatives=MAX_ALTERNATIVES)
    family = minimum_size_covering_sets(output.graph, Direction.UPWARD,
                                        budget)
    d = output.labels["d"]
    target = 2 * cnf.variable_count + 1
    right = bool(family) and all(
        len(m) == target and d in m for m in family
    )
    ok = bool(models) == right
    evidence = {
        "satisfiable": bool(models),
        "model_count": len(models),
        "family_size": len(family),
        "target_size": target,
        "sizes": sorted({len(m) for m in family}),
        "sets_containing_d": sum(1 for m in family if d in m),
    }
    if not ok and family:
        evidence["counterexample"] = {"set": _names(family[0])}
    return ok, evidence


def _size_2k3(cnf: CNF, budget: SolverBudget):
    output = build_cons1(cnf, max_alternatives=MAX_ALTERNATIVES)
    graph = output.graph
    labels = output.labels
    models = brute_force_sat(cnf)
    target = 2 * cnf.variable_count + 3
    checked = []
    ok = True
    for assignment in models:
        members = {labels["a_1"], labels["a_2"], labels["a_3"]}
        for i, value in enumerate(assignment, start=1):
            stems = ("u", "up") if value else ("ub", "ubp")
            members |= {labels[f"{stem}_{i}"] for stem in stems}
        minimal = decide(graph, Direction.UPWARD, Notion.INCLUSION_MINIMAL,
                         TestSet(members), budget).verdict
        good = minimal and len(members) == target
        ok = ok and good
        entry = {"assignment": "".join(map(str, assignment)),
                 "size": len(members), "minimal": minimal}
        if not good:
            entry["counterexample"] = {"set": _names(members)}
        checked.append(entry)
    evidence = {"model_count": len(models), "target_size": target,
                "assignment_sets": checked}
    return ok, evidence


def _size_5k2(cnf: CNF, budget: SolverBudget):
    models = brute_force_sat(cnf)
    evidence: dict = {"satisfiable": bool(models), "model_count": len(models)}
    if not models:
        evidence["note"] = "vacuous: statement conditions on satisfiability"
        return True, evidence
    output = build_cons5(cnf, max_alternatives=MAX_ALTERNATIVES)
    minimal = minimal_covering_sets(output.graph, Direction.DOWNWARD, budget)
    smallest = minimum_size_covering_sets(output.graph, Direction.DOWNWARD,
                                          budget)
    target = 5 * cnf.variable_count + 2
    ok = (
        sorted(map(sorted, _family_names(minimal)))
        == sorted(map(sorted, _family_names(smallest)))
        and all(len(m) == target for m in minimal)
    )
    evidence.update({
        "minimal_family_size": len(minimal),
        "minimum_size_family_size": len(smallest),
        "target_size": target,
        "sizes": sorted({len(m) for m in minimal}),
    })
    if not ok:
        evidence["counterexample"] = {"minimal": _family_names(minimal[:4])}
    return ok, evidence


def _size_3nrk(cnf: CNF, budget: SolverBudget):
    clause_count = len(cnf.clauses)
    if clause_count < 2:
        raise ValidationError(
            "SIZE_3NRK requires at least two clauses; the size formula "
            "does not hold for single-clause formulas"
        )
    output = build_thm9(cnf, max_alternatives=MAX_ALTERNATIVES)
    family = minimum_size_covering_sets(output.graph, Direction.DOWNWARD,
                                        budget)
    k_min = None
    for assignment in itertools.product((0, 1), repeat=cnf.variable_count):
        satisfied = sum(
            1 for clause in cnf.clauses
            if _clause_satisfied(clause, assignment)
        )
        cost = satisfied + (1 if satisfied == clause_count else 0)
        k_min = cost if k_min is None else min(k_min, cost)
    target = 3 * cnf.variable_count + clause_count + k_min
    ok = bool(family) and all(len(m) == target for m in family)
    evidence = {
        "k_min": k_min,
        "target_size": target,
        "family_size": len(family),
        "sizes": sorted({len(m) for m in family}),
    }
    if not ok and family:
        evidence["counterexample"] = {"set": _names(family[0])}
    return ok, evidence


# --------------------------------------------------------------------------
# dispatch


def _single(evaluator):
    def run(instance, budget):
        if not isinstance(instance, CNF):
            raise ValidationError(
                "this claim takes a single formula, not a list"
            )
        return evaluator(instance, budget), _describe(instance)

    return run


def _composite_claim(evaluator):
    def run(instance, budget):
        if isinstance(instance, CNF) or not hasattr(instance, "__iter__"):
            raise ValidationError(
                "this claim takes a list of formulas"
            )
        cnfs = list(instance)
        if not all(isinstance(f, CNF) for f in cnfs):
            raise ValidationError("instance list must contain formulas only")
        descriptor = " ++ ".join(_describe(f) for f in cnfs)
        return evaluator(cnfs, budget), descriptor

    return run


_REGISTRY = {
    "CLAIM1": _single(_claim1),
    "CLAIM2": _single(_claim2),
    "CLAIM3": _single(_claim3),
    "CLAIM4": _composite_claim(_claim4),
    "CLAIM5": _composite_claim(_claim5),
    "CLAIM6": _composite_claim(_claim6),
    "CLAIM7": _single(_claim7),
    "CLAIM8": _single(_claim8),
    "CLAIM9": _single(_claim9),
    "CLAIM10": _single(_claim10),
    "CLAIM11": _composite_claim(_claim11),
    "SIZE_2N1": _single(_size_2n1),
    "SIZE_2K3": _single(_size_2k3),
    "SIZE_5K2": _single(_size_5k2),
    "SIZE_3NRK": _single(_size_3nrk),
    "PARITY_UP": _composite_claim(_parity_up),
    "PARITY_DOWN": _composite_claim(_parity_down),
}

CLAIM_IDS = tuple(_REGISTRY)


def verify_claim(claim_id: str, instance, budget: "SolverBudget | None" = None
                 ) -> ClaimReport:
    """Check one claim on one instance; see the module docstring.

    Raises :class:`ValidationError` for unknown claim ids, instances of the
    wrong shape, and instances violating a claim's stated precondition.
    Budget exhaustion yields a ``skipped-budget`` report.
    """
    try:
        runner = _REGISTRY[claim_id]
    except KeyError:
        raise ValidationError(f"unknown claim id: {claim_id}") from None
    budget = budget or SolverBudget()
    started = time.perf_counter()
    try:
        (ok, evidence), descriptor = runner(instance, budget)
        verdict = "pass" if ok else "fail"
    except ResourceError as exc:
        descriptor = _instance_descriptor(instance)
        verdict = "skipped-budget"
        evidence = {
            "reason": str(exc),
            "subsets_examined": getattr(exc, "examined", None),
        }
    return ClaimReport(
        claim_id=claim_id,
        instance=descriptor,
        verdict=verdict,
        evidence=evidence,
        wall_seconds=time.perf_counter() - started,
    )


def _instance_descriptor(instance) -> str:
    if isinstance(instance, CNF):
        return _describe(instance)
    try:
        return " ++ ".join(_describe(f) for f in instance)
    except (TypeError, ValidationError):
        return repr(instance)
