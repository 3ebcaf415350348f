"""Command-line front end for the covering-set toolkit.

Subcommands
-----------
check       stability (and optionally minimality) of a given set
solve       any covering-set decision/search problem on a ``.dg`` graph
reduce      emit a formula-to-graph construction as ``.dg`` plus labels JSON
verify      run a registered claim check over one formula (or a list)
realize     emit a preference profile whose majority graph is the input
random-cnf  generate a reproducible random formula in DIMACS form

Results are printed as JSON with a fixed key order; ``--plain`` reduces
``check``/``solve`` output to the bare answer.  Exit codes: 0 success,
64 usage error, 65 invalid input, 75 budget exhausted, 70 internal error.
``verify`` additionally exits 1 when a claim fails and 2 when the only
blemish is a skipped (over-budget) check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import traceback

from . import __version__
from .budgets import SolverBudget
from .covering import Direction, is_covering_set, is_minimal_covering_set
from .errors import ParseError, ResourceError, ValidationError
from .graph import DominanceGraph, parse_graph, serialize_graph
from .harness import CLAIM_IDS, random_cnf, verify_claim
from .reductions import (
    DEFAULT_MAX_ALTERNATIVES,
    build_cons1,
    build_cons3,
    build_cons5,
    build_cons6,
    build_thm3,
    build_thm9,
    mcgarvey_profile,
    parse_dimacs,
    profile_to_dict,
    serialize_dimacs,
)
from .solver import (
    Exists,
    Find,
    Member,
    MemberAll,
    Notion,
    Size,
    TestSet,
    Unique,
    decide,
)

__all__ = ["run", "main"]

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_ONLY_SKIPS = 2
EXIT_USAGE = 64
EXIT_INVALID = 65
EXIT_INTERNAL = 70
EXIT_BUDGET = 75

ENV_SUBSETS = "COVERS_BUDGET_SUBSETS"
ENV_SECONDS = "COVERS_BUDGET_SECONDS"

# name on the command line -> (builder, takes a list of formulas)
_CONSTRUCTIONS = {
    "thm3": (build_thm3, False),
    "cons1": (build_cons1, False),
    "cons3": (build_cons3, True),
    "thm9": (build_thm9, False),
    "cons5": (build_cons5, False),
    "cons6": (build_cons6, True),
}

_PROBLEMS = ("size", "member", "member-all", "unique", "test", "find",
             "exists")


class _UsageError(Exception):
    """Bad flag structure; reported on stderr with exit code 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want exit 64
        raise _UsageError(message)


# --------------------------------------------------------------------------
# shared helpers


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _emit(text: str, out_path: "str | None") -> None:
    if out_path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        _write_text(out_path, text if text.endswith("\n") else text + "\n")


def _emit_json(payload, out_path: "str | None" = None) -> None:
    _emit(json.dumps(payload, indent=2), out_path)


def _split_set(text: str) -> tuple[str, ...]:
    members = tuple(part.strip() for part in text.split(",") if part.strip())
    if not members:
        raise _UsageError("--set needs a non-empty comma-separated list")
    return members


def _ordered_ids(graph: DominanceGraph, members) -> str:
    ordered = sorted(members, key=graph.index_of)
    return ",".join(a.id for a in ordered)


def _env_number(name: str, converter, label: str):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return converter(raw)
    except ValueError:
        raise ValidationError(f"{name} must be {label}, got {raw!r}") from None


def _budget_from(args) -> SolverBudget:
    defaults = SolverBudget()
    subsets = getattr(args, "budget_subsets", None)
    if subsets is None:
        subsets = _env_number(ENV_SUBSETS, int, "an integer")
    seconds = getattr(args, "budget_seconds", None)
    if seconds is None:
        seconds = _env_number(ENV_SECONDS, float, "a number")
    alternatives = getattr(args, "budget_alternatives", None)
    return SolverBudget(
        max_subsets=defaults.max_subsets if subsets is None else subsets,
        max_seconds=defaults.max_seconds if seconds is None else seconds,
        max_alternatives=(defaults.max_alternatives
                          if alternatives is None else alternatives),
    )


def _add_budget_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget-subsets", type=int, metavar="N",
                        help="stop after examining N candidate subsets "
                             f"(or ${ENV_SUBSETS})")
    parser.add_argument("--budget-seconds", type=float, metavar="X",
                        help="stop after X seconds of search "
                             f"(or ${ENV_SECONDS})")
    parser.add_argument("--budget-alternatives", type=int, metavar="N",
                        help="refuse full enumeration over more than N free "
                             "alternatives")


# --------------------------------------------------------------------------
# subcommand handlers


def _cmd_check(args) -> int:
    graph = parse_graph(_read_text(args.graph))
    members = _split_set(args.set)
    direction = Direction(args.direction)
    started = time.perf_counter()
    if args.minimal:
        answer = is_minimal_covering_set(graph, members, direction,
                                         _budget_from(args))
    else:
        answer = is_covering_set(graph, members, direction)
    payload = {
        "problem": "check",
        "direction": direction.value,
        "notion": "minimal" if args.minimal else None,
        "answer": answer,
        "stats": {"wall_seconds": round(time.perf_counter() - started, 6)},
    }
    if args.plain:
        _emit("true" if answer else "false", None)
    else:
        _emit_json(payload)
    return EXIT_OK


def _build_problem(args):
    kind = args.problem
    if kind == "size":
        if args.k is None:
            raise _UsageError("--problem size needs --k")
        return Size(args.k)
    if kind in ("member", "member-all"):
        if args.alt is None:
            raise _UsageError(f"--problem {kind} needs --alt")
        return Member(args.alt) if kind == "member" else MemberAll(args.alt)
    if kind == "unique":
        return Unique()
    if kind == "test":
        if args.set is None:
            raise _UsageError("--problem test needs --set")
        return TestSet(_split_set(args.set))
    if kind == "find":
        return Find()
    return Exists()


def _cmd_solve(args) -> int:
    if args.all and args.problem not in ("member", "member-all", "unique"):
        raise _UsageError("--all is only available for member, member-all, "
                          "and unique")
    graph = parse_graph(_read_text(args.graph))
    direction = Direction(args.direction)
    notion = Notion(args.notion)
    problem = _build_problem(args)
    answer = decide(graph, direction, notion, problem, _budget_from(args))
    payload = {
        "problem": args.problem,
        "direction": direction.value,
        "notion": notion.value,
        "answer": answer.verdict,
    }
    if answer.witness is not None:
        payload["witness"] = _ordered_ids(graph, answer.witness)
    if args.all and answer.all_solutions is not None:
        payload["all"] = [_ordered_ids(graph, s)
                          for s in answer.all_solutions]
    payload["stats"] = {
        "subsets_examined": answer.stats.subsets_examined,
        "wall_seconds": round(answer.stats.wall_seconds, 6),
        "vacuous": answer.stats.vacuous,
    }
    if args.plain:
        if args.problem == "find":
            _emit("null" if answer.verdict is None
                  else payload.get("witness", ""), None)
        else:
            _emit(json.dumps(answer.verdict), None)
    else:
        _emit_json(payload)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    builder, composite = _CONSTRUCTIONS[args.construction]
    formulas = [
        parse_dimacs(_read_text(path), allow_empty=args.allow_empty_clauses)
        for path in args.cnf
    ]
    if composite:
        output = builder(formulas, max_alternatives=args.max_alternatives)
    else:
        if len(formulas) != 1:
            raise _UsageError(
                f"{args.construction} takes exactly one --cnf, "
                f"got {len(formulas)}"
            )
        output = builder(formulas[0], max_alternatives=args.max_alternatives)
    _emit(serialize_graph(output.graph), args.out)
    if args.labels is not None:
        _emit_json(
            {
                "construction": output.construction_id,
                "labels": {role: alt.id
                           for role, alt in output.labels.items()},
            },
            args.labels,
        )
    return EXIT_OK


def _cmd_verify(args) -> int:
    formulas = [
        parse_dimacs(_read_text(path), allow_empty=args.allow_empty_clauses)
        for path in args.cnf
    ]
    instance = formulas[0] if len(formulas) == 1 else formulas
    budget = _budget_from(args)
    reports = [verify_claim(claim_id, instance, budget=budget)
               for claim_id in args.claim]
    payload = ([report.to_dict() for report in reports]
               if len(reports) > 1 else reports[0].to_dict())
    _emit_json(payload, args.out)
    verdicts = {report.verdict for report in reports}
    if "fail" in verdicts:
        return EXIT_CLAIM_FAILED
    if "skipped-budget" in verdicts:
        return EXIT_ONLY_SKIPS
    return EXIT_OK


def _cmd_realize(args) -> int:
    graph = parse_graph(_read_text(args.graph))
    profile = mcgarvey_profile(graph)
    _emit_json(profile_to_dict(profile), args.out)
    return EXIT_OK


def _cmd_random_cnf(args) -> int:
    cnf = random_cnf(args.variables, args.clauses, args.literals_per_clause,
                     seed=args.seed)
    _emit(serialize_dimacs(cnf), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser assembly


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="covers",
        description="Exact solving and verification for upward/downward "
                    "covering sets in dominance graphs.",
    )
    parser.add_argument("--version", action="version",
                        version=f"covers {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser(
        "check", help="test whether a given set is a covering set")
    check.add_argument("--graph", required=True, metavar="PATH")
    check.add_argument("--set", required=True, metavar="A,B,C")
    check.add_argument("--direction", required=True, choices=("up", "down"))
    check.add_argument("--minimal", action="store_true",
                       help="also require that no proper subset covers")
    check.add_argument("--plain", action="store_true",
                       help="print just true/false")
    _add_budget_flags(check)
    check.set_defaults(handler=_cmd_check)

    solve = commands.add_parser(
        "solve", help="answer a covering-set decision/search problem")
    solve.add_argument("--graph", required=True, metavar="PATH")
    solve.add_argument("--direction", required=True, choices=("up", "down"))
    solve.add_argument("--notion", default="minimal",
                       choices=("minimal", "minimum-size"))
    solve.add_argument("--problem", required=True, choices=_PROBLEMS)
    solve.add_argument("--k", type=int, help="size bound for --problem size")
    solve.add_argument("--alt", metavar="NAME",
                       help="alternative for --problem member/member-all")
    solve.add_argument("--set", metavar="A,B,C",
                       help="candidate set for --problem test")
    solve.add_argument("--all", action="store_true",
                       help="also list every solution (member, member-all, "
                            "unique)")
    solve.add_argument("--plain", action="store_true",
                       help="print just the answer")
    _add_budget_flags(solve)
    solve.set_defaults(handler=_cmd_solve)

    reduce_ = commands.add_parser(
        "reduce", help="build a formula-to-graph construction")
    reduce_.add_argument("--construction", required=True,
                         choices=sorted(_CONSTRUCTIONS))
    reduce_.add_argument("--cnf", required=True, action="append",
                         metavar="PATH",
                         help="DIMACS input; repeat for chained "
                              "constructions")
    reduce_.add_argument("--out", metavar="PATH",
                         help="write the graph here instead of stdout")
    reduce_.add_argument("--labels", metavar="PATH",
                         help="also write a role-to-alternative JSON map")
    reduce_.add_argument("--allow-empty-clauses", action="store_true")
    reduce_.add_argument("--max-alternatives", type=int,
                         default=DEFAULT_MAX_ALTERNATIVES, metavar="N")
    reduce_.set_defaults(handler=_cmd_reduce)

    verify = commands.add_parser(
        "verify", help="run registered claim checks on formulas")
    verify.add_argument("--claim", required=True, action="append",
                        choices=CLAIM_IDS, metavar="CLAIM",
                        help=f"one of: {', '.join(CLAIM_IDS)}")
    verify.add_argument("--cnf", required=True, action="append",
                        metavar="PATH",
                        help="DIMACS input; repeat for claims over formula "
                             "lists")
    verify.add_argument("--out", metavar="PATH",
                        help="write the report JSON here instead of stdout")
    verify.add_argument("--allow-empty-clauses", action="store_true")
    _add_budget_flags(verify)
    verify.set_defaults(handler=_cmd_verify)

    realize = commands.add_parser(
        "realize", help="emit a voter profile whose majority graph is the "
                        "input graph")
    realize.add_argument("--graph", required=True, metavar="PATH")
    realize.add_argument("--out", metavar="PATH")
    realize.set_defaults(handler=_cmd_realize)

    random_ = commands.add_parser(
        "random-cnf", help="generate a reproducible random DIMACS formula")
    random_.add_argument("--variables", required=True, type=int)
    random_.add_argument("--clauses", required=True, type=int)
    random_.add_argument("--literals-per-clause", required=True, type=int)
    random_.add_argument("--seed", required=True, type=int)
    random_.add_argument("--out", metavar="PATH")
    random_.set_defaults(handler=_cmd_random_cnf)

    return parser


def run(argv) -> int:
    """Execute one invocation; return the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        code = exc.code if isinstance(exc.code, int) else 0
        return EXIT_OK if code == 0 else EXIT_USAGE
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Exception:  # pragma: no cover - defensive
        traceback.print_exc()
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
