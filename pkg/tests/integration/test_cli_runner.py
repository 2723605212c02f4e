"""Интеграционные тесты командной строки."""

from __future__ import annotations

import io
import json
from typing import Any, Dict, List, Optional, Tuple

import pytest

from app.algebra.errors import AlgebraError, BudgetExceeded, NotSemiconjugate, ParameterOutOfRange
from app.cli.report import Report, describe_error
from app.cli.runner import build_parser, run
from app.config.settings import Settings
from app.solvers.normalform import NoFixedPointInField


def execute(argv: List[str], settings: Optional[Settings] = None) -> Tuple[int, str]:
    stdout = io.StringIO()
    code = run(argv, settings or Settings(), stdout)
    return code, stdout.getvalue()


def execute_json(argv: List[str], settings: Optional[Settings] = None) -> Tuple[int, Dict[str, Any]]:
    code, output = execute(argv + ["--json"], settings)
    return code, json.loads(output)


def test_solve_reports_basis() -> None:
    code, document = execute_json(
        ["solve", "--field", "F5", "--alpha", "2", "--beta", "0", "--gamma", "2", "--delta", "0", "--degree", "5"]
    )

    assert code == 0
    assert set(document) == {"command", "field", "inputs", "result", "status"}
    assert document["command"] == "solve"
    assert document["field"] == {"char": 5, "degree": 1}
    assert document["status"] == "success"
    assert document["result"]["kind"] == "affine-space"
    assert document["result"]["particular"] == []
    assert document["result"]["basis"] == [["0", "1"], ["0", "0", "0", "0", "0", "1"]]
    assert document["result"]["free_coefficients"] == [1, 5]


def test_solve_peel_text_output() -> None:
    code, output = execute(
        ["solve-peel", "--field", "F3", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1", "--degree", "3"]
    )

    assert code == 0
    assert "particular: x" in output
    assert "basis: 1, x^3+2x" in output
    assert output.rstrip().endswith("status: success")


def test_empty_space_exit_code() -> None:
    code, document = execute_json(
        ["solve", "--alpha", "1", "--beta", "0", "--gamma", "1", "--delta", "5", "--degree", "9"]
    )

    assert code == 1
    assert document["status"] == "empty"
    assert document["field"] == {"char": 0, "degree": 1}


@pytest.mark.parametrize(
    ("field", "f", "code", "holds"),
    [("F3", "x^3", 0, True), ("Q", "x^2", 1, False)],
)
def test_verify(field: str, f: str, code: int, holds: bool) -> None:
    result_code, document = execute_json(
        ["verify", "--field", field, "--f", f, "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1"]
    )

    assert result_code == code
    assert document["result"]["holds"] is holds


def test_decompose_scaling_witness() -> None:
    code, document = execute_json(["decompose", "--field", "Q", "--f", "1/x", "--g", "2*x", "--h", "x/2"])

    assert code == 0
    witness = document["result"]["witness"]
    assert document["result"]["kind"] == "scale-scale"
    assert (witness["e"], witness["s"]) == (-1, 0)
    assert witness["psi"] == {"numerator": ["1"], "denominator": ["1"]}
    assert witness["u"] == ["1", "0", "0", "1"]


def test_decompose_not_semiconjugate() -> None:
    code, document = execute_json(["decompose", "--field", "Q", "--f", "x^2", "--g", "x+1", "--h", "x+1"])

    assert code == 1
    assert document["status"] == "false"
    assert document["result"]["error"] == "NotSemiconjugate"


def test_count_wells_over_extension_field() -> None:
    code, document = execute_json(["count", "--field", "F4", "--mod", "t^2+t+1", "--mode", "wells", "--beta", "1"])

    assert code == 0
    assert document["field"] == {"char": 2, "degree": 2, "modulus": [1, 1, 1]}
    assert document["result"]["count"] == 16
    assert document["result"]["expected"] == 16


def test_count_mode_requires_parameters() -> None:
    code, document = execute_json(["count", "--field", "F5", "--mode", "mullen", "--beta", "1"])

    assert code == 2
    assert document["status"] == "usage_error"
    assert "--alpha" in document["result"]["message"]


@pytest.mark.parametrize(("field", "code", "status"), [("Q", 3, "obstruction"), ("F5", 0, "success")])
def test_normalize_fixed_point_obstruction(field: str, code: int, status: str) -> None:
    result_code, document = execute_json(["normalize", "--field", field, "--g", "(x-1)/(x+1)"])

    assert result_code == code
    assert document["status"] == status


def test_normalize_translation() -> None:
    code, document = execute_json(["normalize", "--g", "x+5"])

    assert code == 0
    assert document["result"]["kind"] == "translation"
    assert document["result"]["v"] == ["1", "0", "0", "1/5"]


def test_family_with_sample() -> None:
    code, document = execute_json(
        ["family", "--field", "F3", "--g", "x+1", "--h", "x+1", "--bound", "1", "--psi", "x"]
    )

    assert code == 0
    assert document["result"]["kind"] == "trans-trans"
    assert document["result"]["sample"] == {"numerator": ["0", "0", "0", "1"], "denominator": ["1"]}


def test_family_mixed_pair_is_empty() -> None:
    code, document = execute_json(["family", "--field", "Q", "--g", "2x", "--h", "x+1"])

    assert code == 1
    assert document["status"] == "empty"
    assert document["result"]["reason"]


def test_enumerate_members() -> None:
    code, document = execute_json(
        ["enumerate", "--field", "F2", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "0", "--degree", "2"]
    )

    assert code == 0
    assert document["result"]["count"] == 4


def test_enumerate_over_budget() -> None:
    code, document = execute_json(
        [
            "enumerate", "--field", "F5", "--budget", "10",
            "--alpha", "2", "--beta", "0", "--gamma", "2", "--delta", "0", "--degree", "3",
        ]
    )

    assert code == 4
    assert document["status"] == "budget_exceeded"
    assert document["result"]["error"] == "BudgetExceeded"


def test_enumerate_over_rationals_is_obstruction() -> None:
    code, _ = execute(["enumerate", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1", "--degree", "1"])

    assert code == 3


@pytest.mark.parametrize("kind", ["scaling", "translation"])
def test_search_mixed(kind: str) -> None:
    code, document = execute_json(
        ["search-mixed", "--field", "F3", "--num-degree", "1", "--den-degree", "1", "--kind", kind]
    )

    assert code == 0
    if kind == "scaling":
        assert document["result"]["count"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--field", "F6", "--alpha", "1", "--beta", "0", "--gamma", "1", "--delta", "0", "--degree", "1"],
        ["verify", "--f", "x^", "--alpha", "1", "--beta", "0", "--gamma", "1", "--delta", "0"],
        ["solve", "--budget", "0", "--alpha", "1", "--beta", "0", "--gamma", "1", "--delta", "0", "--degree", "1"],
        ["solve", "--alpha", "0", "--beta", "0", "--gamma", "1", "--delta", "0", "--degree", "1"],
    ],
)
def test_usage_errors(argv: List[str]) -> None:
    code, document = execute_json(argv)

    assert code == 2
    assert document["status"] == "usage_error"


def test_argparse_errors_exit_with_two() -> None:
    code, output = execute(["solve", "--alpha", "1"])

    assert code == 2
    assert output == ""


def test_global_flags_before_subcommand() -> None:
    args = build_parser().parse_args(["--field", "F7", "--json", "normalize", "--g", "x+1"])

    assert args.field == "F7"
    assert args.json is True
    assert args.command == "normalize"


def test_settings_supply_defaults() -> None:
    code, output = execute(["normalize", "--g", "2x"], Settings(default_field="F3", report_json=True))

    assert code == 0
    assert json.loads(output)["field"]["char"] == 3


def test_selftest_passes() -> None:
    code, document = execute_json(["selftest"], Settings(selftest_max_degree=1))

    assert code == 0
    names = [check["name"] for check in document["result"]["checks"]]
    assert names == [
        "differential-F2",
        "differential-F3",
        "wells-counts",
        "mullen-counts",
        "normal-form-round-trip",
        "mixed-search",
    ]
    assert all(check["passed"] for check in document["result"]["checks"])


@pytest.mark.parametrize(
    ("error", "code"),
    [
        (AlgebraError("ввод"), 2),
        (ParameterOutOfRange("граница"), 2),
        (NotSemiconjugate("f∘g ≠ h∘f"), 1),
        (NoFixedPointInField("нет точки"), 3),
        (BudgetExceeded(100, 10), 4),
    ],
)
def test_error_categories_map_to_exit_codes(error: AlgebraError, code: int) -> None:
    report = Report("test")
    describe_error(report, error)

    assert report.exit_code == code
    assert report.result["error"] == type(error).__name__


def test_family_psi_is_written_in_x_over_extension() -> None:
    code, output = execute(
        ["family", "--field", "F4", "--mod", "t^2+t+1", "--g", "x+1", "--h", "x+1", "--psi", "tx"]
    )

    assert code == 0
    # ψ(x) = tx, f = x + ψ(x^2−x)
    assert "sample: tx^2+(t+1)x" in output


def test_family_help_names_psi_variable(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setenv("COLUMNS", "400")
    with pytest.raises(SystemExit):
        build_parser().parse_args(["family", "--help"])

    assert "параметр ψ записывается через x" in capsys.readouterr().out
