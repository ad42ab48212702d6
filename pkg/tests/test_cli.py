import json
import subprocess
import sys

import pytest

from surreal_limits.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    assert code == 0
    return json.loads(out)


@pytest.mark.parametrize("argv, want", [
    (["cmp", "- + +", "- + + +"], "less"),
    (["cmp", "-+", "-+"], "equal"),
    (["cmp", "eps", "0"], "greater"),
    (["add", "+ -", "+ -"], "+"),
    (["add", "-5/8", "5/8"], "0"),
    (["value", "+ + - +"], "7/4"),
    (["value", "(+-)^w"], "2/3"),
])
def test_simple_commands(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == want


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "(-^w)^w")
    assert code == 0 and "dom = w^2" in out


def test_rat_with_prefix(capsys):
    code, out, _ = run(capsys, "rat", "1/3", "--prefix", "6")
    assert code == 0
    assert "first 6 signs: +--+-+" in out


def test_options_and_simplest(capsys):
    code, out, _ = run(capsys, "options", "++-++--")
    assert code == 0
    assert "L = {+, ++ -, ++ - +}" in out
    code, out, _ = run(capsys, "simplest", "--lo", "+", "++-", "++-+", "--hi", "++", "++-++", "++-++-")
    assert code == 0 and out.strip() == "++ - ++ --"


def test_limit_naturals(capsys):
    code, out, _ = run(capsys, "limit", "naturals")
    assert code == 0
    assert out.startswith("Converged +^w")


def test_limit_json_schema(capsys):
    j = run_json(capsys, "limit", "harmonic_series", "--depth-samples", "1,2,3")
    assert j["kind"] == "converged"
    assert j["limit"]["text"] == "+^w"
    assert {"policy", "horizon", "depths", "n0", "notes"} <= set(j)
    assert j["notes"][0]["kind"] == "discrepancy"


def test_limit_literal_not_unique(capsys):
    code, out, _ = run(capsys, "limit", "naturals", "--policy", "literal")
    assert code == 0 and out.startswith("NotUnique")


def test_limit_alternating(capsys):
    j = run_json(capsys, "limit", "alternating")
    assert j["kind"] == "no_limit" and j["position"] == "0"


def test_limit_with_candidate(capsys):
    j = run_json(capsys, "limit", "geometric", "--candidate", "+-+^w", "--depth-samples", "1,2,3,4")
    assert j["kind"] == "converged"


def test_series_and_birthday(capsys):
    j = run_json(capsys, "series", "harmonic", "--n", "3")
    assert [t["value"] for t in j["terms"]] == ["1", "3/2", "11/6"]
    assert j["terms"][2]["dom"] == "w"
    j = run_json(capsys, "birthday", "omega_multiples")
    assert j["b"] == "w^2" and j["notes"][0]["kind"] == "erratum"


def test_families(capsys):
    j = run_json(capsys, "families")
    assert "harmonic_series" in j["families"]


def test_json_flag_after_subcommand(capsys):
    code, out, _ = run(capsys, "eval", "+-", "--json")
    assert code == 0 and json.loads(out)["text"] == "+ -"


@pytest.mark.parametrize("argv, code", [
    (["eval", "++x"], 2),
    (["limit", "nope"], 2),
    (["frobnicate"], 2),
    ([], 2),
    (["value", "+^w"], 1),
    (["add", "+^w", "+"], 1),
    (["simplest", "--lo", "+", "--hi", "-"], 1),
    (["rat", "1/0"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surreal_limits", "cmp", "-++", "-+++"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "less"
