"""Dominance-graph gadget constructions from CNF formulas.

Each builder returns the graph together with a label map from stable role
keys (``"x_1"``, ``"e_2"``, ``"d"``, ...) to the graph's alternatives; the
label map is the sanctioned way to address gadget alternatives, since names
are an encoding detail.  Builders are deterministic: the same input yields
byte-identical serialized graphs.

Name scheme (primes become ``p``, bars become ``b``, hats append ``h`` to
the letter part): x̄₃ → ``xb3``, x₃′ → ``xp3``, x̄₃″ → ``xbpp3``, ẑ₁′ →
``zph1``.  In the two alternating compositions every component name gains a
``_<position>`` suffix, except each component's distinguished alternative
``d`` which becomes ``d<position>``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ResourceError, ValidationError
from ..graph import Alternative, DominanceGraph, new_graph
from .cnf import CNF, check_formula_properties

DEFAULT_MAX_ALTERNATIVES = 40

CONSTRUCTION_IDS = ("THM3", "CONS1", "CONS3", "THM9", "CONS5", "CONS6")


@dataclass(frozen=True, eq=False)
class ReductionOutput:
    graph: DominanceGraph
    labels: dict  # role key -> Alternative
    construction_id: str


def _check_cap(count: int, max_alternatives: int, construction: str):
    if count > max_alternatives:
        raise ResourceError(
            f"{construction} would create {count} alternatives, "
            f"over the cap of {max_alternatives}"
        )


def _require_variables(cnf: CNF, construction: str):
    if cnf.variable_count < 1:
        raise ValidationError(
            f"{construction} requires at least one variable"
        )


def _reject_empty_clauses(cnf: CNF, construction: str):
    for pos, clause in enumerate(cnf.clauses, start=1):
        if not clause:
            raise ValidationError(
                f"{construction} does not support empty clauses "
                f"(clause {pos})"
            )


def _occurrences(cnf: CNF):
    """Per clause: the sets of positively / negatively occurring variables."""
    for clause in cnf.clauses:
        positive = {lit for lit in clause if lit > 0}
        negative = {-lit for lit in clause if lit < 0}
        yield positive, negative


# --------------------------------------------------------------------------
# component part lists (local names; shared by standalone and composite use)


def _thm3_parts(cnf: CNF):
    n, r = cnf.variable_count, len(cnf.clauses)
    roles: dict[str, str] = {}
    edges: list[tuple[str, str]] = []
    for i in range(1, n + 1):
        for stem in ("x", "xb", "xp", "xbp"):
            roles[f"{stem}_{i}"] = f"{stem}{i}"
        x, xb, xp, xbp = f"x{i}", f"xb{i}", f"xp{i}", f"xbp{i}"
        edges += [(x, xb), (xb, xp), (xp, xbp), (xbp, x)]
    for j in range(1, r + 1):
        roles[f"y_{j}"] = f"y{j}"
        edges.append((f"y{j}", "d"))
    roles["d"] = "d"
    for j, (positive, negative) in enumerate(_occurrences(cnf), start=1):
        for i in sorted(positive):
            edges.append((f"x{i}", f"y{j}"))
        for i in sorted(negative):
            edges.append((f"xb{i}", f"y{j}"))
    return roles, edges


def _cons1_parts(cnf: CNF):
    k, ell = cnf.variable_count, len(cnf.clauses)
    roles: dict[str, str] = {}
    edges: list[tuple[str, str]] = []
    for i in range(1, k + 1):
        for stem in ("u", "ub", "up", "ubp"):
            roles[f"{stem}_{i}"] = f"{stem}{i}"
        u, ub, up, ubp = f"u{i}", f"ub{i}", f"up{i}", f"ubp{i}"
        edges += [(u, ub), (ub, up), (up, ubp), (ubp, u)]
    for j in range(1, ell + 1):
        roles[f"e_{j}"] = f"e{j}"
        roles[f"ep_{j}"] = f"ep{j}"
    for idx in (1, 2, 3):
        roles[f"a_{idx}"] = f"a{idx}"
    for j, (positive, negative) in enumerate(_occurrences(cnf), start=1):
        e, ep = f"e{j}", f"ep{j}"
        for i in sorted(positive):
            u, ub = f"u{i}", f"ub{i}"
            edges += [(u, e), (u, ep), (e, ub), (ep, ub)]
        for i in sorted(negative):
            u, ub = f"u{i}", f"ub{i}"
            edges += [(ub, e), (ub, ep), (e, u), (ep, u)]
        for i in range(1, k + 1):
            if i not in positive and i not in negative:
                edges += [(e, f"up{i}"), (ep, f"ubp{i}")]
        edges += [("a1", e), ("a1", ep)]
    edges += [("a1", "a2"), ("a2", "a3"), ("a3", "a1")]
    return roles, edges


def _thm9_parts(cnf: CNF):
    n, r = cnf.variable_count, len(cnf.clauses)
    roles: dict[str, str] = {}
    edges: list[tuple[str, str]] = []
    for i in range(1, n + 1):
        for stem in ("x", "xb", "xp", "xbp", "xpp", "xbpp"):
            roles[f"{stem}_{i}"] = f"{stem}{i}"
        x, xb, xp, xbp, xpp, xbpp = (
            f"x{i}", f"xb{i}", f"xp{i}", f"xbp{i}", f"xpp{i}", f"xbpp{i}"
        )
        edges += [(x, xb), (xb, xp), (xp, xbp), (xbp, xpp), (xpp, xbpp),
                  (xbpp, x)]
        edges += [(x, xp), (xp, xpp), (xpp, x)]
        edges += [(xb, xbp), (xbp, xbpp), (xbpp, xb)]
    for j in range(1, r + 1):
        roles[f"y_{j}"] = f"y{j}"
        roles[f"z_{j}"] = f"z{j}"
        edges += [("d", f"y{j}"), (f"z{j}", "d")]
    roles["d"] = "d"
    for j, (positive, negative) in enumerate(_occurrences(cnf), start=1):
        for i in sorted(positive):
            edges.append((f"y{j}", f"x{i}"))
        for i in sorted(negative):
            edges.append((f"y{j}", f"xb{i}"))
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i != j:
                edges.append((f"z{i}", f"y{j}"))
    return roles, edges


def _cons5_parts(cnf: CNF):
    k, ell = cnf.variable_count, len(cnf.clauses)
    roles: dict[str, str] = {}
    edges: list[tuple[str, str]] = []
    plain: list[tuple[str, str]] = []  # (stem, index) of every a in A1 u A2

    for i in range(1, k + 1):
        for stem in ("x", "xb", "xp", "xbp", "xpp", "xbpp", "z", "zp", "zpp"):
            roles[f"{stem}_{i}"] = f"{stem}{i}"
            plain.append((stem, str(i)))
        x, xb, xp, xbp, xpp, xbpp = (
            f"x{i}", f"xb{i}", f"xp{i}", f"xbp{i}", f"xpp{i}", f"xbpp{i}"
        )
        z, zp, zpp = f"z{i}", f"zp{i}", f"zpp{i}"
        edges += [(x, xb), (xb, xp), (xp, xbp), (xbp, xpp), (xpp, xbpp),
                  (xbpp, x)]
        edges += [(x, xp), (xp, xpp), (xpp, x)]
        edges += [(xb, xbp), (xbp, xbpp), (xbpp, xb)]
        edges += [(zp, z), (z, x), (zpp, z), (z, xb), (zp, x), (zpp, xb),
                  ("d", z)]
    for j in range(1, ell + 1):
        roles[f"y_{j}"] = f"y{j}"
        plain.append(("y", str(j)))
        edges.append(("d", f"y{j}"))
    for j, (positive, negative) in enumerate(_occurrences(cnf), start=1):
        for i in sorted(positive):
            edges.append((f"x{i}", f"y{j}"))
        for i in sorted(negative):
            edges.append((f"xb{i}", f"y{j}"))
    for stem, index in plain:
        name = f"{stem}{index}"
        hat = f"{stem}h{index}"
        roles[f"{stem}h_{index}"] = hat
        edges += [("b", hat), (name, hat), (hat, "d")]
    for role, name in (("b", "b"), ("c", "c"), ("d", "d")):
        roles[role] = name
    edges.append(("c", "d"))
    return roles, edges


def _build_single(cnf: CNF, parts, construction_id: str, count: int,
                  max_alternatives: int) -> ReductionOutput:
    _check_cap(count, max_alternatives, construction_id)
    roles, edges = parts(cnf)
    names = sorted(set(roles.values()))
    if len(names) != count:
        raise AssertionError(
            f"{construction_id}: built {len(names)} alternatives, "
            f"expected {count}"
        )
    graph = new_graph(names, edges)
    labels = {role: Alternative(name) for role, name in roles.items()}
    return ReductionOutput(graph, labels, construction_id)


# --------------------------------------------------------------------------
# standalone constructions


def build_thm3(cnf: CNF,
               max_alternatives: int = DEFAULT_MAX_ALTERNATIVES) -> ReductionOutput:
    """Variable 4-cycles, one clause alternative per clause, and a decision
    alternative d dominated by all clause alternatives (upward family)."""
    _require_variables(cnf, "THM3")
    _reject_empty_clauses(cnf, "THM3")
    count = 4 * cnf.variable_count + len(cnf.clauses) + 1
    return _build_single(cnf, _thm3_parts, "THM3", count, max_alternatives)


def build_cons1(cnf: CNF,
                max_alternatives: int = DEFAULT_MAX_ALTERNATIVES) -> ReductionOutput:
    """Variable 4-cycles, doubled clause alternatives, and a guard 3-cycle
    whose head dominates every clause alternative (upward family)."""
    _require_variables(cnf, "CONS1")
    _reject_empty_clauses(cnf, "CONS1")
    count = 4 * cnf.variable_count + 2 * len(cnf.clauses) + 3
    return _build_single(cnf, _cons1_parts, "CONS1", count, max_alternatives)


def build_thm9(cnf: CNF,
               max_alternatives: int = DEFAULT_MAX_ALTERNATIVES) -> ReductionOutput:
    """Variable 6-cycles with nested 3-cycles, clause alternatives dominating
    their literals' alternatives, and a d/y/z block (downward family)."""
    _require_variables(cnf, "THM9")
    count = 6 * cnf.variable_count + 2 * len(cnf.clauses) + 1
    return _build_single(cnf, _thm9_parts, "THM9", count, max_alternatives)


def build_cons5(cnf: CNF,
                max_alternatives: int = DEFAULT_MAX_ALTERNATIVES) -> ReductionOutput:
    """Variable 6-cycles plus z-triples, one shadow alternative per member,
    and guards b, c around a decision alternative d (downward family)."""
    _require_variables(cnf, "CONS5")
    count = 18 * cnf.variable_count + 2 * len(cnf.clauses) + 3
    return _build_single(cnf, _cons5_parts, "CONS5", count, max_alternatives)


# --------------------------------------------------------------------------
# alternating compositions


def _mangle(name: str, position: int) -> str:
    return f"d{position}" if name == "d" else f"{name}_{position}"


def _validate_composite_inputs(cnfs, construction: str, enforce_conditions: bool):
    cnfs = list(cnfs)
    if len(cnfs) < 2 or len(cnfs) % 2 != 0:
        raise ValidationError(
            f"{construction} needs an even number (at least 2) of formulas, "
            f"got {len(cnfs)}"
        )
    properties = []
    for pos, cnf in enumerate(cnfs, start=1):
        _require_variables(cnf, construction)
        _reject_empty_clauses(cnf, construction)
        props = check_formula_properties(cnf)
        properties.append(props)
        if enforce_conditions:
            for condition in ("first_var_free", "min_two_unsat",
                              "min_two_models"):
                if not getattr(props, condition):
                    raise ValidationError(
                        f"{construction}: formula {pos} violates the "
                        f"{condition} input condition"
                    )
    for pos in range(1, len(cnfs)):
        if properties[pos].satisfiable and not properties[pos - 1].satisfiable:
            raise ValidationError(
                f"{construction}: chain violation — formula {pos + 1} is "
                f"satisfiable but formula {pos} is not"
            )
    return cnfs


def _composite(cnfs, odd_parts, even_parts, extra_count: int,
               construction_id: str, max_alternatives: int):
    """Mangled union of alternating components; returns mutable build state."""
    component_names: list[list[str]] = []
    names: list[str] = []
    labels: dict[str, str] = {}
    edges: list[tuple[str, str]] = []
    for pos, cnf in enumerate(cnfs, start=1):
        parts = odd_parts if pos % 2 == 1 else even_parts
        roles, local_edges = parts(cnf)
        local_names = sorted(set(roles.values()))
        component_names.append([_mangle(n, pos) for n in local_names])
        names.extend(component_names[-1])
        for role, name in roles.items():
            key = f"d_{pos}" if role == "d" else f"{role}_{pos}"
            labels[key] = _mangle(name, pos)
        edges.extend(
            (_mangle(u, pos), _mangle(v, pos)) for u, v in local_edges
        )
    _check_cap(len(names) + extra_count, max_alternatives, construction_id)
    return component_names, names, labels, edges


def build_cons3(cnfs, max_alternatives: int = DEFAULT_MAX_ALTERNATIVES) -> ReductionOutput:
    """Alternating chain for the upward parity problem: odd positions use
    the THM3 component, even positions the CONS1 component, linked so the
    first decision alternative reflects the satisfiability boundary.

    Every formula must satisfy the three chain-input conditions (see
    :class:`covers.reductions.cnf.FormulaProperties`), and satisfiability
    must be monotone along the list (a satisfiable formula never follows an
    unsatisfiable one).
    """
    cnfs = _validate_composite_inputs(cnfs, "CONS3", enforce_conditions=True)
    m = len(cnfs) // 2
    component_names, names, labels, edges = _composite(
        cnfs, _thm3_parts, _cons1_parts, 0, "CONS3", max_alternatives
    )
    for i in range(1, m + 1):
        even_pos, odd_d = 2 * i, f"d{2 * i - 1}"
        edges.append((f"up1_{even_pos}", odd_d))
        edges.append((f"ubp1_{even_pos}", odd_d))
    for i in range(2, m + 1):
        d_name = f"d{2 * i - 1}"
        edges.extend((d_name, name) for name in component_names[2 * i - 3])
    graph = new_graph(names, edges)
    label_map = {role: Alternative(name) for role, name in labels.items()}
    return ReductionOutput(graph, label_map, "CONS3")


def build_cons6(cnfs, max_alternatives: int = DEFAULT_MAX_ALTERNATIVES) -> ReductionOutput:
    """Alternating chain for the downward parity problem: odd positions use
    the THM9 component, even positions the CONS5 component, joined through
    fresh connector alternatives r/s/t per pair plus c*/d*.

    Satisfiability must be monotone along the list; the chain-input
    conditions are not required here.
    """
    cnfs = _validate_composite_inputs(cnfs, "CONS6", enforce_conditions=False)
    m = len(cnfs) // 2
    component_names, names, labels, edges = _composite(
        cnfs, _thm9_parts, _cons5_parts, 3 * m + 2, "CONS6", max_alternatives
    )
    for i in range(1, m + 1):
        r, s, t = f"r{i}", f"s{i}", f"t{i}"
        names += [r, s, t]
        labels[f"r_{i}"], labels[f"s_{i}"], labels[f"t_{i}"] = r, s, t
        odd_d, even_d = f"d{2 * i - 1}", f"d{2 * i}"
        edges += [(r, odd_d), (r, even_d), (s, r), (s, odd_d), (t, r),
                  (t, even_d)]
    names += ["cstar", "dstar"]
    labels["c_star"], labels["d_star"] = "cstar", "dstar"
    edges.extend(("dstar", f"r{i}") for i in range(1, m + 1))
    edges.append(("cstar", "dstar"))
    graph = new_graph(names, edges)
    label_map = {role: Alternative(name) for role, name in labels.items()}
    return ReductionOutput(graph, label_map, "CONS6")
