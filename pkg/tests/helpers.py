"""Shared test utilities.

The ``naive_*`` functions form an independent oracle: they transcribe the
covering definitions directly over frozensets and enumerate all 2^n subsets
without pruning, masks, or compiled kernels.  Solver results are checked
against them on small graphs.
"""

from __future__ import annotations

import itertools
import random

from covers import Alternative, Direction, DominanceGraph, new_graph


def ids(members) -> list[str]:
    """Sorted alternative names of a set, for readable comparisons."""
    return sorted(a.id for a in members)


def family_ids(family) -> list[list[str]]:
    return sorted(ids(s) for s in family)


# --------------------------------------------------------------------------
# independent oracle


def naive_dominators(graph: DominanceGraph, x, within) -> frozenset:
    return frozenset(z for (z, w) in graph.edges if w == x and z in within)


def naive_dominated(graph: DominanceGraph, x, within) -> frozenset:
    return frozenset(w for (z, w) in graph.edges if z == x and w in within)


def naive_covers(graph, within, x, y, direction) -> bool:
    within = frozenset(within)
    if (x, y) not in graph.edges:
        return False
    if direction is Direction.UPWARD:
        return naive_dominators(graph, x, within) <= naive_dominators(graph, y, within)
    return naive_dominated(graph, y, within) <= naive_dominated(graph, x, within)


def naive_uncovered(graph, within, direction) -> frozenset:
    within = frozenset(within)
    return frozenset(
        x for x in within
        if not any(naive_covers(graph, within, y, x, direction)
                   for y in within if y != x)
    )


def naive_is_covering(graph, members, direction) -> bool:
    members = frozenset(members)
    universe = frozenset(graph.alternatives)
    if naive_uncovered(graph, members, direction) != members:
        return False
    return all(
        naive_uncovered(graph, members | {x}, direction) <= members
        for x in universe - members
    )


def naive_covering_sets(graph, direction) -> list[frozenset]:
    universe = list(graph.alternatives)
    found = []
    for size in range(len(universe) + 1):
        for combo in itertools.combinations(universe, size):
            if naive_is_covering(graph, combo, direction):
                found.append(frozenset(combo))
    return found


def naive_minimal_covering_sets(graph, direction) -> list[frozenset]:
    family = naive_covering_sets(graph, direction)
    return [m for m in family if not any(s < m for s in family)]


def naive_minimum_size_covering_sets(graph, direction) -> list[frozenset]:
    family = naive_covering_sets(graph, direction)
    if not family:
        return []
    least = min(len(s) for s in family)
    return [s for s in family if len(s) == least]


# --------------------------------------------------------------------------
# deterministic random instances


def random_graph(n: int, seed: int, edge_prob: float = 0.5) -> DominanceGraph:
    """A seeded random dominance graph with alternatives a0..a{n-1}."""
    rng = random.Random(seed)
    names = [f"a{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            roll = rng.random()
            if roll < edge_prob / 2:
                edges.append((names[i], names[j]))
            elif roll < edge_prob:
                edges.append((names[j], names[i]))
    return new_graph(names, edges)


# --------------------------------------------------------------------------
# assignment-derived covering sets of the gadget constructions, built from
# the label maps (kept independent of the harness implementation)


def thm3_assignment_set(output, cnf, assignment) -> frozenset:
    """Pair per variable, clause alternative per falsified clause, and the
    decision alternative when the assignment is a model."""
    from covers.reductions import falsified_count

    labels = output.labels
    members = []
    for i, value in enumerate(assignment, start=1):
        if value:
            members += [labels[f"x_{i}"], labels[f"xp_{i}"]]
        else:
            members += [labels[f"xb_{i}"], labels[f"xbp_{i}"]]
    for j, clause in enumerate(cnf.clauses, start=1):
        if not any(assignment[abs(lit) - 1] == (1 if lit > 0 else 0)
                   for lit in clause):
            members.append(labels[f"y_{j}"])
    if falsified_count(cnf, assignment) == 0:
        members.append(labels["d"])
    return frozenset(members)


def cons1_assignment_set(output, assignment) -> frozenset:
    """Guard triple plus the pair matching each variable's truth value."""
    labels = output.labels
    members = [labels["a_1"], labels["a_2"], labels["a_3"]]
    for i, value in enumerate(assignment, start=1):
        if value:
            members += [labels[f"u_{i}"], labels[f"up_{i}"]]
        else:
            members += [labels[f"ub_{i}"], labels[f"ubp_{i}"]]
    return frozenset(members)


def thm9_assignment_set(output, cnf, assignment) -> frozenset:
    """Triple per variable, clause alternative per satisfied clause, all z's,
    and the decision alternative when the assignment is a model."""
    from covers.reductions import falsified_count

    labels = output.labels
    members = []
    for i, value in enumerate(assignment, start=1):
        stems = ("x", "xp", "xpp") if value else ("xb", "xbp", "xbpp")
        members += [labels[f"{stem}_{i}"] for stem in stems]
    satisfied_all = falsified_count(cnf, assignment) == 0
    for j, clause in enumerate(cnf.clauses, start=1):
        members.append(labels[f"z_{j}"])
        if any(assignment[abs(lit) - 1] == (1 if lit > 0 else 0)
               for lit in clause):
            members.append(labels[f"y_{j}"])
    if satisfied_all:
        members.append(labels["d"])
    return frozenset(members)


def cons5_assignment_set(output, cnf, assignment) -> frozenset:
    """Guards b and c, the primed z pair per variable, and the triple
    matching each variable's truth value."""
    labels = output.labels
    members = [labels["b"], labels["c"]]
    for i, value in enumerate(assignment, start=1):
        stems = ("x", "xp", "xpp") if value else ("xb", "xbp", "xbpp")
        members += [labels[f"{stem}_{i}"] for stem in stems]
        members += [labels[f"zp_{i}"], labels[f"zpp_{i}"]]
    return frozenset(members)
