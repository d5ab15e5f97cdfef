import json
import os

import pytest

from mvmodal.cli import EXIT_ERROR, EXIT_FOUND, EXIT_NOINPUT, EXIT_OK, EXIT_USAGE, main
from mvmodal.scenarios import SCENARIOS

K = "[](p -> q) -> ([]p -> []q)"
L3 = ["--algebra", "lukasiewicz(3)"]

K_MODEL = """
algebra: lukasiewicz(3)
worlds: w u
R: w u = 0.5
val: p @ u = 0.5
val: q @ u = 0
"""


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("MVMODAL_LOG_LEVEL", "MVMODAL_JOBS", "MVMODAL_MODEL_CAP", "MVMODAL_CONSTANTS"):
        monkeypatch.delenv(name, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize(
    "argv, output",
    [
        (["formula", "parse", "p -> 0"], "~p\n"),
        (["formula", "companion", "[]p -> [][]q", "--indexing", "level"], "($r0 -> p) -> $r0 -> $r1 -> q\n"),
        (["formula", "translate", "[]p -> q"], "∀y(Rxy → Py) → Qx\n"),
        (["formula", "eta", "0.5"] + L3, "p + p\n"),
    ],
)
def test_formula_commands(capsys, argv, output):
    assert run(capsys, *argv) == (EXIT_OK, output)


def test_search_valid(capsys):
    code, out = run(capsys, "search", "valid", K, *L3, "--max-worlds", "2")
    assert code == EXIT_FOUND
    assert out.startswith("Refuted at ")
    code, out = run(capsys, "search", "valid", K, *L3, "--class", "crisp")
    assert code == EXIT_OK
    assert out == "ValidUpTo(2) [lukasiewicz(3), crisp, up to 2 world(s)]\n"


def test_search_json_lines(capsys):
    code, out = run(capsys, "search", "global", "[]p", "--premise", "p", *L3, "--format", "json-lines")
    assert code == EXIT_OK
    record = json.loads(out)
    assert (record["query"], record["status"], record["premises"]) == ("global", "ValidUpTo", ["p"])


def test_search_define_and_discard(capsys):
    assert run(capsys, "search", "define", K, *L3, "--class", "idem")[0] == EXIT_OK
    code, out = run(capsys, "search", "discard", K, *L3)
    assert code == EXIT_FOUND
    assert out.startswith("Discarded [lukasiewicz(3)^c, Fr]")
    assert run(capsys, "search", "discard", K, *L3, "--variant", "CFr")[0] == EXIT_OK
    assert run(capsys, "search", "discard", "[](p * p)", "--premise", "[]p", *L3)[0] == EXIT_FOUND
    premises = ["--premise", "[]p", "--premise", "[]q"]
    assert run(capsys, "search", "discard", "[](p /\\ q)", *premises, *L3)[0] == EXIT_OK


def test_search_lift(capsys):
    code, out = run(capsys, "search", "lift", "--delta", "p /\\ q", "--epsilon", "p", "p", "q", "p /\\ q", *L3)
    assert code == EXIT_OK
    assert out == "Verified: []p /\\ []q -> [](p /\\ q)\n"


def test_model_eval(capsys, tmp_path):
    path = tmp_path / "k.model"
    path.write_text(K_MODEL)
    assert run(capsys, "model", "eval", str(path), "[]q") == (EXIT_OK, "w = 0.5\nu = 1\n")
    assert run(capsys, "model", "eval", str(path), K, "w") == (EXIT_OK, "0.5\n")


def test_algebra_commands(capsys):
    code, out = run(capsys, "algebra", "check", "godel(3)")
    assert code == EXIT_OK
    assert all(line.startswith("ok ") for line in out.splitlines())
    code, out = run(capsys, "algebra", "show", "lukasiewicz(3)")
    assert code == EXIT_OK
    assert out.startswith("name: lukasiewicz(3)")
    assert "classification:" in out


def test_calc_commands(capsys, data_dir):
    path = os.path.join(data_dir, "fusion_distribution.deriv")
    assert run(capsys, "calc", "check", path) == (EXIT_OK, "ok: 10 step(s) over table3k(lukasiewicz(3)^c)\n")
    code, out = run(capsys, "calc", "bookkeeping", "lukasiewicz(3)")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 4 * 9 + 1


def test_calc_invalid_step(capsys, tmp_path):
    path = tmp_path / "bad.deriv"
    path.write_text("calculus: table3(lukasiewicz(3)^c)\n1: p \\/ ~p ; nmtaut\n")
    code, out = run(capsys, "calc", "check", str(path))
    assert code == EXIT_FOUND
    assert out.startswith("invalid step 1:")


def test_reproduce(capsys):
    code, out = run(capsys, "reproduce", "--list")
    assert code == EXIT_OK
    assert len(out.splitlines()) == len(SCENARIOS)
    code, out = run(capsys, "reproduce", "fig1_k_failure")
    assert code == EXIT_OK
    assert out.startswith("PASS fig1_k_failure:")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["formula", "parse", "p &"], EXIT_ERROR),
        (["search", "valid", "p", "--algebra", "nosuch(3)"], EXIT_ERROR),
        (["reproduce", "fig9"], EXIT_ERROR),
        (["search", "valid", "p"], EXIT_USAGE),
        (["formula", "eta", "0.75"] + L3, EXIT_USAGE),
        (["model", "eval", "no-such-file.model", "p"], EXIT_NOINPUT),
        (["calc", "check", "no-such-file.deriv"], EXIT_NOINPUT),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert capsys.readouterr().err.startswith("mvmodal: ")


@pytest.mark.parametrize("argv", [[], ["search"], ["search", "valid", "p", "--max-worlds", "0"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == EXIT_USAGE


def test_bad_environment(capsys, monkeypatch):
    monkeypatch.setenv("MVMODAL_JOBS", "zero")
    assert main(["formula", "parse", "p"]) == EXIT_USAGE
