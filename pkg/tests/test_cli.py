"""Command-line interface: exit codes, JSON schema, thin-wrapper fidelity."""

import json
import pathlib
import subprocess
import sys

import pytest

from covers import (
    Direction,
    Notion,
    Member,
    SolverBudget,
    decide,
    minimal_covering_sets,
    new_graph,
    parse_graph,
    serialize_graph,
)
from covers.cli import run
from covers.harness import random_cnf
from covers.reductions import (
    majority_graph,
    profile_from_dict,
    serialize_dimacs,
)

DATA = pathlib.Path(__file__).parent / "data"


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def chain_graph(tmp_path):
    graph = new_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    path = tmp_path / "chain.dg"
    path.write_text(serialize_graph(graph))
    return str(path)


# --------------------------------------------------------------------------
# solve


def test_solve_member_reports_true_with_witness(capsys):
    code, payload = run_json(capsys, [
        "solve", "--graph", str(DATA / "thm3_example.dg"),
        "--direction", "up", "--notion", "minimal",
        "--problem", "member", "--alt", "d",
    ])
    assert code == 0
    assert payload["answer"] is True
    assert list(payload) == ["problem", "direction", "notion", "answer",
                             "witness", "stats"]
    assert payload["problem"] == "member"
    assert payload["direction"] == "up"
    assert payload["notion"] == "minimal"
    assert "d" in payload["witness"].split(",")
    assert payload["stats"]["subsets_examined"] > 0


def test_solve_matches_direct_library_call(capsys):
    code, payload = run_json(capsys, [
        "solve", "--graph", str(DATA / "thm3_example.dg"),
        "--direction", "up", "--problem", "member", "--alt", "d",
    ])
    graph = parse_graph((DATA / "thm3_example.dg").read_text())
    answer = decide(graph, Direction.UPWARD, Notion.INCLUSION_MINIMAL,
                    Member("d"))
    assert code == 0
    assert payload["answer"] == answer.verdict
    ordered = sorted(answer.witness, key=graph.index_of)
    assert payload["witness"] == ",".join(a.id for a in ordered)


def test_solve_find_without_solution_prints_null_and_exits_zero(
        capsys, chain_graph):
    code, payload = run_json(capsys, [
        "solve", "--graph", chain_graph, "--direction", "down",
        "--problem", "find",
    ])
    assert code == 0
    assert payload["answer"] is None
    assert "witness" not in payload


def test_solve_find_plain_output(capsys, chain_graph):
    code = run(["solve", "--graph", chain_graph, "--direction", "up",
                "--problem", "find", "--plain"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "a,c"

    code = run(["solve", "--graph", chain_graph, "--direction", "down",
                "--problem", "find", "--plain"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "null"


def test_solve_all_lists_the_whole_family(capsys, chain_graph):
    code, payload = run_json(capsys, [
        "solve", "--graph", chain_graph, "--direction", "up",
        "--problem", "unique", "--all",
    ])
    graph = parse_graph(pathlib.Path(chain_graph).read_text())
    family = minimal_covering_sets(graph, Direction.UPWARD)
    assert code == 0
    assert payload["answer"] is True
    assert payload["all"] == [
        ",".join(a.id for a in sorted(s, key=graph.index_of))
        for s in family
    ]


def test_solve_parameter_structure_is_enforced(capsys, chain_graph):
    assert run(["solve", "--graph", chain_graph, "--direction", "up",
                "--problem", "size"]) == 64
    assert run(["solve", "--graph", chain_graph, "--direction", "up",
                "--problem", "member"]) == 64
    assert run(["solve", "--graph", chain_graph, "--direction", "up",
                "--problem", "find", "--all"]) == 64
    assert run(["solve", "--graph", chain_graph, "--direction", "sideways",
                "--problem", "find"]) == 64
    capsys.readouterr()


def test_solve_unknown_alternative_is_invalid_input(capsys, chain_graph):
    assert run(["solve", "--graph", chain_graph, "--direction", "up",
                "--problem", "member", "--alt", "zz"]) == 65
    assert "zz" in capsys.readouterr().err


# --------------------------------------------------------------------------
# check


def test_check_confirms_known_minimal_set(capsys):
    code, payload = run_json(capsys, [
        "check", "--graph", str(DATA / "thm3_example.dg"),
        "--set", "xb1,xbp1,xb2,xbp2,xb3,xbp3,d",
        "--direction", "up", "--minimal",
    ])
    assert code == 0
    assert payload["answer"] is True
    assert payload["notion"] == "minimal"


def test_check_plain_prints_bare_boolean(capsys):
    code = run(["check", "--graph", str(DATA / "thm3_example.dg"),
                "--set", "xb1,xbp1,xb2,xbp2,xb3,xbp3,d",
                "--direction", "up", "--minimal", "--plain"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "true"

    code = run(["check", "--graph", str(DATA / "thm3_example.dg"),
                "--set", "d", "--direction", "up", "--plain"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "false"


# --------------------------------------------------------------------------
# exit codes and budgets


def test_usage_errors_exit_64(capsys):
    assert run([]) == 64
    assert run(["frobnicate"]) == 64
    assert run(["solve", "--graph", "x.dg"]) == 64  # missing required flags
    capsys.readouterr()


def test_help_and_version_exit_zero(capsys):
    assert run(["--help"]) == 0
    assert run(["--version"]) == 0
    capsys.readouterr()


def test_invalid_input_exits_65(capsys, tmp_path):
    missing = str(tmp_path / "nope.dg")
    assert run(["solve", "--graph", missing, "--direction", "up",
                "--problem", "find"]) == 65

    bad = tmp_path / "bad.dg"
    bad.write_text("this is not a graph file\n")
    assert run(["solve", "--graph", str(bad), "--direction", "up",
                "--problem", "find"]) == 65
    capsys.readouterr()


def test_budget_exhaustion_exits_75(capsys):
    assert run(["solve", "--graph", str(DATA / "thm3_example.dg"),
                "--direction", "up", "--problem", "unique",
                "--budget-alternatives", "5"]) == 75
    assert "free alternatives exceed" in capsys.readouterr().err


def test_env_budget_is_honoured_and_flags_override_it(
        capsys, monkeypatch):
    monkeypatch.setenv("COVERS_BUDGET_SUBSETS", "100")
    argv = ["solve", "--graph", str(DATA / "thm3_example.dg"),
            "--direction", "up", "--problem", "unique"]
    assert run(argv) == 75

    assert run(argv + ["--budget-subsets", str(2 ** 20)]) == 0

    monkeypatch.setenv("COVERS_BUDGET_SUBSETS", "lots")
    assert run(argv) == 65
    capsys.readouterr()


# --------------------------------------------------------------------------
# reduce


def test_reduce_reproduces_the_golden_graph(capsys, tmp_path):
    out = tmp_path / "g.dg"
    labels = tmp_path / "l.json"
    code = run(["reduce", "--construction", "cons1",
                "--cnf", str(DATA / "cons1_example.cnf"),
                "--out", str(out), "--labels", str(labels)])
    assert code == 0
    assert out.read_text() == (DATA / "cons1_example.dg").read_text()
    mapping = json.loads(labels.read_text())
    assert mapping["construction"] == "CONS1"
    assert mapping["labels"]["u_1"] == "u1"
    assert mapping["labels"]["e_1"] == "e1"
    capsys.readouterr()


def test_reduce_writes_to_stdout_without_out_flag(capsys):
    code = run(["reduce", "--construction", "thm3",
                "--cnf", str(DATA / "thm3_example.cnf")])
    assert code == 0
    assert capsys.readouterr().out == \
        (DATA / "thm3_example.dg").read_text()


def test_reduce_single_construction_rejects_formula_lists(capsys):
    cnf = str(DATA / "thm3_example.cnf")
    assert run(["reduce", "--construction", "thm3",
                "--cnf", cnf, "--cnf", cnf]) == 64
    capsys.readouterr()


def test_reduce_respects_the_alternative_cap(capsys):
    assert run(["reduce", "--construction", "thm3",
                "--cnf", str(DATA / "thm3_example.cnf"),
                "--max-alternatives", "10"]) == 75
    assert "over the cap" in capsys.readouterr().err


# --------------------------------------------------------------------------
# verify


def test_verify_passing_claim_exits_zero(capsys, tmp_path):
    cnf = tmp_path / "sat.cnf"
    cnf.write_text("p cnf 1 1\n1 0\n")
    code, payload = run_json(capsys, [
        "verify", "--claim", "CLAIM2", "--cnf", str(cnf),
    ])
    assert code == 0
    assert payload["verdict"] == "pass"
    assert payload["claim"] == "CLAIM2"


def test_verify_multiple_claims_report_as_a_list(capsys, tmp_path):
    cnf = tmp_path / "sat.cnf"
    cnf.write_text("p cnf 1 1\n1 0\n")
    code, payload = run_json(capsys, [
        "verify", "--claim", "CLAIM1", "--claim", "CLAIM2",
        "--cnf", str(cnf),
    ])
    assert code == 0
    assert [entry["claim"] for entry in payload] == ["CLAIM1", "CLAIM2"]
    assert {entry["verdict"] for entry in payload} == {"pass"}


def test_verify_failing_claim_exits_one(capsys, tmp_path):
    cnf = tmp_path / "free.cnf"
    cnf.write_text("p cnf 1 0\n")
    code, payload = run_json(capsys, [
        "verify", "--claim", "CLAIM11", "--cnf", str(cnf), "--cnf", str(cnf),
    ])
    assert code == 1
    assert payload["verdict"] == "fail"


def test_verify_over_budget_claim_exits_two(capsys, tmp_path):
    cnf = tmp_path / "two.cnf"
    cnf.write_text("p cnf 2 1\n1 2 0\n")
    code, payload = run_json(capsys, [
        "verify", "--claim", "CLAIM10", "--cnf", str(cnf),
    ])
    assert code == 2
    assert payload["verdict"] == "skipped-budget"


def test_verify_rejects_unknown_claim(capsys):
    assert run(["verify", "--claim", "CLAIM99",
                "--cnf", "whatever.cnf"]) == 64
    capsys.readouterr()


# --------------------------------------------------------------------------
# realize and random-cnf


def test_realize_round_trips_through_the_majority_graph(capsys):
    code, payload = run_json(capsys, [
        "realize", "--graph", str(DATA / "thm3_example.dg"),
    ])
    assert code == 0
    original = parse_graph((DATA / "thm3_example.dg").read_text())
    realized = majority_graph(profile_from_dict(payload))
    assert serialize_graph(realized) == serialize_graph(original)


def test_random_cnf_emits_the_seeded_formula(capsys, tmp_path):
    code = run(["random-cnf", "--variables", "3", "--clauses", "4",
                "--literals-per-clause", "2", "--seed", "1"])
    assert code == 0
    assert capsys.readouterr().out == \
        serialize_dimacs(random_cnf(3, 4, 2, seed=1))

    out = tmp_path / "r.cnf"
    assert run(["random-cnf", "--variables", "3", "--clauses", "4",
                "--literals-per-clause", "2", "--seed", "1",
                "--out", str(out)]) == 0
    assert out.read_text() == serialize_dimacs(random_cnf(3, 4, 2, seed=1))


def test_random_cnf_rejects_bad_parameters(capsys):
    assert run(["random-cnf", "--variables", "0", "--clauses", "1",
                "--literals-per-clause", "1", "--seed", "1"]) == 65
    capsys.readouterr()


# --------------------------------------------------------------------------
# installed entry point


def test_console_script_answers_like_the_library():
    result = subprocess.run(
        [sys.executable, "-m", "covers.cli", "solve",
         "--graph", str(DATA / "thm3_example.dg"),
         "--direction", "up", "--problem", "member", "--alt", "d"],
        capture_output=True, text=True, timeout=300,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["answer"] is True
