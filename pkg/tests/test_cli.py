"""End-to-end command line behavior: exit codes, report schema, formats."""

import json
import os

import jsonschema
import pytest

from symreduce.cli import main

HERE = os.path.dirname(__file__)
SCHEMA_PATH = os.path.join(HERE, os.pardir, "docs", "report-schema.json")

with open(SCHEMA_PATH, "r", encoding="utf-8") as handle:
    SCHEMA = json.load(handle)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["exit_code"] == code
    assert report["schema_version"] == "1.0"
    return code, report


def test_decompose_worked_example(capsys):
    code, report = run_cli(capsys, "decompose", "--nvars", "2", "x1^3 + x2^3")
    assert code == 0
    assert report["verdict"] == "decomposed"
    assert report["decomposition"]["power_sum_form"] == "-1/2*p1^3 + 3/2*p1*p2"
    assert report["decomposition"]["support"] == [1, 2]
    assert report["mode"] == "decompose"
    assert report["input_hash"].startswith("sha256:")


def test_check_nonneg_named_instance(capsys):
    code, report = run_cli(capsys, "check-nonneg", "--nvars", "3", "3*p4 - p2^2")
    assert code == 0
    assert report["verdict"] == "no-counterexample"
    assert report["plan"]["bound"] == 2
    assert report["plan"]["cell_count"] == 2
    assert report["search"]["value"] >= -1e-6
    assert report["oracle"]["agrees_with_reduction"]


def test_check_nonneg_refuted(capsys):
    code, report = run_cli(capsys, "check-nonneg", "--nvars", "2", "p1")
    assert code == 1
    assert report["verdict"] == "counterexample-found"
    witness = report["search"]["witness"]
    assert witness is not None
    assert sum(witness) < 0


def test_check_empty_witness(capsys):
    code, report = run_cli(capsys, "check-empty", "--nvars", "2", "p1 =0; p2 - 2 =0")
    assert code == 1
    assert report["verdict"] == "witness-found"
    assert report["search"]["verdict"] == "feasible_witness_found"


def test_check_empty_proved(capsys):
    code, report = run_cli(capsys, "check-empty", "--nvars", "3", "p2 + 1 =0")
    assert code == 0
    assert report["verdict"] == "proved-infeasible"
    assert report["search"]["proved_infeasible"] is True


def test_check_empty_heuristic(capsys):
    code, report = run_cli(capsys, "check-empty", "--nvars", "2", "p2 - 100 =0")
    assert code == 0
    assert report["verdict"] == "no-witness-found"
    assert report["search"]["proved_infeasible"] is False


def test_sparsity_mode(capsys):
    code, report = run_cli(capsys, "sparsity", "--nvars", "5", "3*p4 - p2^2")
    assert code == 0
    assert report["sparsity"]["support"] == [2, 4]
    assert report["sparsity"]["agrees"] is True


def test_reduce_modes(capsys):
    code, report = run_cli(
        capsys, "reduce", "--nvars", "4", "--mode", "degree", "p1 =0; p2 - 1 =0"
    )
    assert code == 0
    assert report["plan"]["theorem"] == "degree_principle"
    assert report["plan"]["cells"] == ["(4)", "(3,1)", "(2,2)"]
    instances = report["plan"]["instances"]
    assert len(instances) == 3
    assert all(len(entry["constraints"]) == 2 for entry in instances)

    code, report = run_cli(
        capsys, "reduce", "--nvars", "3", "--mode", "half", "3*p4 - p2^2"
    )
    assert code == 0
    assert report["plan"]["theorem"] == "half_degree"

    code, report = run_cli(
        capsys, "reduce", "--nvars", "5", "--mode", "jsparse", "3*p4 - p2^2 >= 0"
    )
    assert code == 0
    assert report["plan"]["theorem"] == "jsparse_even"
    assert report["jsparse_support"] == [2, 4]


def test_parse_error_exit_2(capsys):
    code, report = run_cli(capsys, "check-nonneg", "--nvars", "2", "x1 + y2")
    assert code == 2
    assert report["verdict"] == "input-error"
    assert report["error"]["line"] == 1


def test_not_symmetric_exit_2(capsys):
    code, report = run_cli(capsys, "check-nonneg", "--nvars", "2", "x1^2")
    assert code == 2
    assert report["error"]["type"] == "not-symmetric"
    assert sorted(report["error"]["witness_permutation"]) == [1, 2]


def test_missing_nvars_exit_2(capsys):
    code, report = run_cli(capsys, "decompose", "x1 + x2")
    assert code == 2
    assert "nvars" in report["error"]["message"]


def test_missing_file_exit_2(capsys):
    # a path-like argument that is not a file parses as an expression and fails
    code, report = run_cli(
        capsys, "decompose", "--nvars", "2", "no/such/file.sys"
    )
    assert code == 2


def test_file_input(tmp_path, capsys):
    path = tmp_path / "system.sys"
    path.write_text("nvars: 2\np1 =0\np2 - 2 =0\n", encoding="utf-8")
    code, report = run_cli(capsys, "check-empty", str(path))
    assert code == 1
    assert report["nvars"] == 2


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("nvars: 3\np2 + 1 =0\n"))
    code, report = run_cli(capsys, "check-empty", "-")
    assert code == 0
    assert report["verdict"] == "proved-infeasible"


def test_bound_override_recorded(capsys):
    code, report = run_cli(
        capsys,
        "reduce",
        "--nvars",
        "3",
        "--mode",
        "degree",
        "--bound-override",
        "3",
        "p2 - 1 =0",
    )
    assert code == 0
    assert report["plan"]["bound"] == 3
    assert any("overridden" in note for note in report["plan"]["notes"])


def test_seed_and_box_flags(capsys):
    code, report = run_cli(
        capsys,
        "check-nonneg",
        "--nvars",
        "2",
        "--seed",
        "5",
        "--box",
        "1.5",
        "--tol",
        "1e-7",
        "p2",
    )
    assert code == 0
    assert report["config"]["random_seed"] == 5
    assert report["config"]["box_radius"] == 1.5
    assert report["config"]["feasibility_tolerance"] == 1e-7


def test_json_report_round_trips(capsys):
    code, report = run_cli(capsys, "check-nonneg", "--nvars", "3", "3*p4 - p2^2")
    again = json.loads(json.dumps(report))
    assert again == report


def test_text_format(capsys):
    code = main(["check-nonneg", "--nvars", "3", "--format", "text", "3*p4 - p2^2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "verdict: no-counterexample" in out
    assert "power-sum form" in out


def test_skip_oracle(capsys):
    code, report = run_cli(
        capsys, "check-nonneg", "--nvars", "3", "--skip-oracle", "3*p4 - p2^2"
    )
    assert code == 0
    assert "oracle" not in report


def test_orthant_flag(capsys):
    # p1 - 1 dips negative on the orthant only at small points; global
    # check refutes, orthant check also refutes (origin), exercise both
    code, report = run_cli(capsys, "check-nonneg", "--nvars", "2", "--orthant", "p1")
    assert code == 0
    assert report["plan"]["orthant_restricted"] is True
    code, report = run_cli(capsys, "check-nonneg", "--nvars", "2", "p1")
    assert code == 1


def test_unknown_subcommand_exit_2(capsys):
    code = main(["frobnicate", "p1"])
    assert code == 2
