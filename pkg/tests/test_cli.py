"""Command line interface: golden outputs, exit codes, determinism."""

import json

import pytest

from liebider.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket_golden(capsys):
    code, out, _ = run(capsys, "bracket", "--family", "virasoro", "L[2]", "L[-2]")
    assert code == EXIT_OK
    assert out == "4·L[0] + 1/2·C0\n"
    code, out, _ = run(
        capsys, "bracket", "--family", "w", "--a", "1/3", "--b", "-1", "L[2]", "I[5]"
    )
    assert code == EXIT_OK
    assert out == "-10/3·I[7]\n"


def test_bracket_usage_errors(capsys):
    code, _, err = run(capsys, "bracket", "--family", "witt", "L[1]")
    assert code == EXIT_USAGE and "exactly two" in err
    code, _, err = run(capsys, "bracket", "--family", "witt", "L[1]", "I[2]")
    assert code == EXIT_USAGE and "not a basis vector" in err
    code, _, err = run(capsys, "bracket", "L[1]", "L[2]")
    assert code == EXIT_USAGE and "--family" in err
    code, _, err = run(capsys, "bracket", "--family", "witt", "X[1]", "L[2]")
    assert code == EXIT_USAGE


def test_bad_rational_parameter(capsys):
    code, _, err = run(
        capsys, "bracket", "--family", "w", "--a", "1/0", "L[1]", "L[2]"
    )
    assert code == EXIT_USAGE


def test_jacobi(capsys):
    code, out, _ = run(
        capsys, "jacobi", "--family", "wtilde", "--a", "0", "--b", "1",
        "--window", "4", "--margin", "1",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["kind"] == "jacobi" and payload["passed"] is True
    assert payload["triples_checked"] > 0


def test_bider_confirmed(capsys):
    code, out, _ = run(
        capsys, "bider", "--family", "witt", "--delta", "1/2",
        "--degrees=-1,0,2", "--window", "6", "--margin", "2",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert [c["status"] for c in payload["cases"]] == ["confirmed"] * 3


def test_degree_out_of_certified_range(capsys):
    code, _, err = run(
        capsys, "bider", "--family", "witt", "--degree", "5",
        "--window", "6", "--margin", "2",
    )
    assert code == EXIT_USAGE and "certified range" in err


def test_derive_inconclusive_for_virasoro(capsys):
    code, out, _ = run(
        capsys, "derive", "--family", "virasoro", "--window", "6", "--margin", "2"
    )
    assert code == EXIT_INCONCLUSIVE


def test_markdown_format(capsys):
    code, out, _ = run(
        capsys, "jacobi", "--family", "witt", "--window", "4", "--margin", "1",
        "--format", "md",
    )
    assert code == EXIT_OK
    assert out.startswith("- **")
    assert "**passed**: True" in out


def test_postlie_mismatch_exit_code(tmp_path, capsys):
    sweep = {
        "postlie": [
            {
                "family": "wtilde", "a": "0", "b": "1",
                "form": "central-square", "coefficients": ["1", "0", "0"],
                "window": {"N": 4, "M": 1},
                "expect": "fail",
            }
        ]
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(sweep))
    code, out, _ = run(capsys, "postlie", "--sweep", str(path))
    assert code == EXIT_MISMATCH
    payload = json.loads(out)
    assert payload["cases"][0]["passed"] is True
    assert payload["cases"][0]["status"] == "mismatch"


def test_tpoisson_sweep(tmp_path, capsys):
    sweep = {
        "tpoisson": [
            {
                "family": "witt", "delta": "2", "form": "witt-scaling",
                "lambda": {"0": "1"}, "window": {"N": 4, "M": 1},
                "expect": "pass",
            },
            {
                "family": "witt", "delta": "3", "form": "witt-scaling",
                "lambda": {"0": "1"}, "window": {"N": 4, "M": 1},
                "expect": "fail",
            },
        ]
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(sweep))
    code, out, _ = run(capsys, "tpoisson", "--sweep", str(path))
    assert code == EXIT_OK
    payload = json.loads(out)
    assert [c["status"] for c in payload["cases"]] == ["confirmed", "confirmed"]


def test_classify_small_sweep_deterministic(tmp_path, capsys):
    sweep = {
        "biderivations": [
            {
                "family": "w", "a": "0", "b": "-1", "delta": "1",
                "degrees": [0], "window": {"N": 6, "M": 2},
            }
        ],
        "derivations": [
            {
                "family": "witt", "delta": "1/2",
                "degrees": [-1, 0, 1], "window": {"N": 6, "M": 2},
            }
        ],
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(sweep))
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    code1 = main(["classify", "--sweep", str(path), "--out", str(out1)])
    code2 = main(["classify", "--sweep", str(path), "--out", str(out2)])
    assert code1 == code2 == EXIT_OK
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    payload = json.loads(b1)
    assert payload["summary"] == {"confirmed": 4, "inconclusive": 0, "mismatch": 0}


def test_classify_bad_sweep_file(capsys):
    code, _, err = run(capsys, "classify", "--sweep", "/nonexistent/sweep.json")
    assert code == EXIT_USAGE and "sweep" in err


def test_commuting_single_family(capsys):
    code, out, _ = run(
        capsys, "commuting", "--family", "w", "--a", "0", "--b", "-1",
        "--window", "8", "--margin", "4",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["status"] == "confirmed"
    assert payload["computed_dimension"] == 2


def test_lift_command(capsys):
    code, out, _ = run(
        capsys, "lift", "--family", "witt", "--generator", "theta_0",
        "--delta", "1/2", "--window", "8", "--margin", "4",
    )
    assert code == EXIT_OK
    assert json.loads(out)["feasible"] is False

    code, out, _ = run(
        capsys, "lift", "--family", "witt", "--generator", "pi",
        "--delta", "1", "--window", "8", "--margin", "4",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["feasible"] is True
    assert payload["extension"] == "virasoro"


def test_lift_usage_errors(capsys):
    code, _, err = run(
        capsys, "lift", "--family", "virasoro", "--generator", "pi",
        "--window", "6", "--margin", "2",
    )
    assert code == EXIT_USAGE and "quotient family" in err
    code, _, err = run(
        capsys, "lift", "--family", "witt", "--generator", "nope",
        "--window", "6", "--margin", "2",
    )
    assert code == EXIT_USAGE and "unknown generator" in err


def test_unknown_command(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == EXIT_USAGE


def test_json_output_sorted_and_stable(capsys):
    code1, out1, _ = run(
        capsys, "jacobi", "--family", "virasoro", "--window", "4", "--margin", "1"
    )
    code2, out2, _ = run(
        capsys, "jacobi", "--family", "virasoro", "--window", "4", "--margin", "1"
    )
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    keys = list(json.loads(out1))
    assert keys == sorted(keys)
