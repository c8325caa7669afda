"""Command line surface: exit codes, text reports, and canonical JSON."""
from __future__ import annotations

import json

import pytest

from reflector.cli import main


def run_cli(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr().out
    return code, out


def test_lattice_report(capsys):
    code, out = run_cli(["lattice", "--lattice", "2U+T8", "--prime", "5"], capsys)
    assert code == 0
    assert "II_{10,2}(5^{-1})" in out
    assert "det 5" in out


def test_lattice_json_is_canonical(capsys):
    code, out = run_cli(
        ["lattice", "--lattice", "2U+T8", "--prime", "5", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["genus"] == "II_{10,2}(5^{-1})"
    assert out.strip() == json.dumps(payload, sort_keys=True, separators=(",", ":"))


def test_solve_json_pinned(capsys):
    code, out = run_cli(
        ["solve", "--lattice", "2U+2E8+D4", "--prime", "2", "--format", "json"],
        capsys,
    )
    assert code == 0
    assert out.strip() == (
        '{"c":30,"c1":1,"count_long":24,"count_short":504,"cp":8,"k":24,'
        '"k_coeffs":null,"reason":"","status":"ray"}'
    )


def test_check_pass_and_fail_exit_codes(capsys):
    code_ok, out_ok = run_cli(
        ["check", "--lattice", "2U+D4", "--prime", "2", "--c1", "1", "--cp", "1", "--k", "96"],
        capsys,
    )
    assert code_ok == 0
    assert "PASS" in out_ok
    code_bad, out_bad = run_cli(
        ["check", "--lattice", "2U+D4", "--prime", "2", "--c1", "1", "--cp", "1", "--k", "95"],
        capsys,
    )
    assert code_bad == 2
    assert "FAIL" in out_bad


def test_check_json_shape(capsys):
    code, out = run_cli(
        [
            "check", "--lattice", "2U+D4", "--prime", "2",
            "--c1", "1", "--cp", "1", "--k", "96", "--format", "json",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["checks"]["matrix_identity"] is True
    assert payload["count_short"] == 24 and payload["count_long"] == 24


def test_discform_subcommand(capsys):
    code, out = run_cli(
        ["discform", "--genus", "II_{12,2}(3^{+7})", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 3**7
    assert payload["norm_2_over_p_count"] == 756


def test_roots_subcommand(capsys):
    code, out = run_cli(
        ["roots", "--lattice", "2U+T4", "--prime", "5", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    names = sorted(c["name"] for c in payload["components"])
    assert names == ["A2", "A2(5)"]
    assert payload["count_norm2"] == 6
    assert payload["count_norm2p"] == 6


def test_eta_subcommand(capsys):
    code, out = run_cli(["eta", "--precision", "6"], capsys)
    assert code == 0
    assert "q^(-1)" in out
    assert "52" in out


def test_tower_subcommand(capsys):
    code, out = run_cli(["tower"], capsys)
    assert code == 0


def test_classify_prime_with_eliminations_exits_two(capsys):
    code, out = run_cli(["classify", "--prime", "19"], capsys)
    assert code == 2
    assert "NOT_REFLECTIVE" in out


def test_classify_prime_all_reflective_exits_zero(capsys):
    code, out = run_cli(["classify", "--prime", "2"], capsys)
    assert code == 0
    assert out.count("REFLECTIVE") >= 15


def test_solve_text_report(capsys):
    code, out = run_cli(["solve", "--lattice", "2U+L7", "--prime", "7"], capsys)
    assert code == 0
    assert "multiplicities (1,7)" in out
    assert "weight 28" in out


def test_unknown_lattice_name_is_an_error(capsys):
    code, _ = run_cli(["lattice", "--lattice", "2U+Q5", "--prime", "3"], capsys)
    assert code == 1


def test_unknown_subcommand_is_an_error(capsys):
    code, _ = run_cli(["frobnicate"], capsys)
    assert code not in (0, None)


def test_missing_required_argument(capsys):
    code, _ = run_cli(["check", "--lattice", "2U+D4"], capsys)
    assert code not in (0, None)
