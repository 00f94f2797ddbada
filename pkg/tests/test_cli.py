import json

import pytest

from vcfold import familyfile
from vcfold.cli import EXIT_BUDGET, EXIT_ERROR, EXIT_OK, EXIT_VIOLATION, main
from vcfold.construct import lowsets, mod_d_family
from vcfold.core import SetFamily


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_vc_command(tmp_path, capsys):
    path = tmp_path / "a.fam"
    path.write_text("n=2\n-\n1,2\n")
    code, rep = run(capsys, "vc", str(path))
    assert code == EXIT_OK and rep["result"]["vc_dimension"] == 1
    assert rep["schema_version"] == 1 and rep["command"] == "vc"

    familyfile.write(path, mod_d_family(6, 2))
    code, rep = run(capsys, "vc", str(path), "--op", "cup", "--k", "2")
    assert rep["result"]["vc_dimension"] == 2

    familyfile.write(path, lowsets(4, 2))
    code, rep = run(capsys, "vc", str(path))
    assert rep["result"]["vc_dimension"] == 2


def test_vc_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.fam"
    path.write_text("n=3\n1\n1\n")
    assert main(["vc", str(path)]) == EXIT_ERROR
    assert "line 3" in capsys.readouterr().err


def test_search_commands(capsys):
    code, rep = run(capsys, "search", "p", "--n", "4", "--k", "2", "--d", "2")
    assert code == EXIT_OK and rep["result"]["value"] == 5
    assert rep["result"]["checks"]["conjecture_holds"] is True
    assert rep["witnesses"]
    code, rep = run(capsys, "search", "two-sided", "--n", "4", "--d", "3")
    assert rep["result"]["value"] == 14
    code, rep = run(capsys, "search", "pprime", "--n", "3", "--k", "2", "--d", "1", "--mode", "exhaustive")
    assert rep["result"]["value"] == 2 and rep["result"]["checks"]["equivalence_holds"]
    code, rep = run(capsys, "search", "m", "--n", "5", "--k", "2", "--t", "2")
    assert rep["result"]["value"] == 10
    code, rep = run(capsys, "search", "p", "--n", "6", "--k", "2", "--d", "2", "--unique")
    assert rep["result"]["unique_up_to_relabelling"] is True


def test_search_budget_and_range(capsys):
    assert main(["search", "p", "--n", "7", "--k", "2", "--d", "4", "--no-seed", "--no-shift",
                 "--budget", "5"]) == EXIT_BUDGET
    assert main(["search", "p", "--n", "4", "--k", "2"]) == EXIT_ERROR
    assert main(["search", "p", "--n", "4", "--k", "2", "--d", "9"]) == EXIT_ERROR


def test_search_flags_claim_violation(monkeypatch, capsys):
    from vcfold import cli
    from vcfold.formula import BoundReport

    monkeypatch.setattr(cli, "conjecture_value", lambda n, k, d: BoundReport("conjecture", 999, {}))
    code, rep = run(capsys, "search", "p", "--n", "4", "--k", "2", "--d", "2")
    assert code == EXIT_VIOLATION
    assert rep["result"]["checks"]["conjecture_holds"] is False


def test_formula_commands(capsys):
    code, rep = run(capsys, "formula", "conjecture", "--n", "6", "--k", "2", "--d", "2")
    assert rep["result"]["value"] == 7 and rep["result"]["terms"]["candidates"] == [4, 7]
    code, rep = run(capsys, "formula", "main", "--n", "7", "--k", "3", "--d", "4")
    assert rep["result"]["value"] == 14
    code, rep = run(capsys, "formula", "n0", "--d", "2", "--k", "2")
    assert rep["result"]["value"] == 4
    code, rep = run(capsys, "formula", "katona", "--n", "5", "--d", "3")
    assert rep["result"]["value"] == 10
    code, rep = run(capsys, "formula", "sauer", "--n", "6", "--d", "2")
    assert rep["result"]["value"] == 22
    assert main(["formula", "main", "--d", "2"]) == EXIT_ERROR


@pytest.mark.parametrize("which, args, size", [
    ("ari", ["--n", "5", "--r", "1", "--i", "1"], 10),
    ("modd", ["--n", "4", "--d", "2"], 9),
    ("chain", ["--n", "3"], 4),
    ("lowsets", ["--n", "4", "--d", "2"], 11),
    ("highsets", ["--n", "4", "--d", "1"], 5),
    ("cube2", ["--n", "4"], 14),
])
def test_construct_writes_files(tmp_path, capsys, which, args, size):
    path = tmp_path / f"{which}.fam"
    code, rep = run(capsys, "construct", which, *args, "-o", str(path))
    assert code == EXIT_OK and rep["result"]["size"] == size
    assert len(familyfile.read(path)) == size


def test_construct_missing_param(capsys):
    assert main(["construct", "ari", "--n", "5", "--r", "1"]) == EXIT_ERROR


def test_verify_command(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["--report", str(out), "verify", "lemma-compress", "sauer",
                 "--trials", "30", "--seed", "5", "--max-n", "6"])
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert code == EXIT_OK and rep["result"]["passed"]
    assert json.loads(out.read_text()) == rep
    assert "PASS" in captured.err and "lemma-compress" in captured.err


def test_verify_is_deterministic(capsys):
    args = ["verify", "lemma-shift", "--trials", "40", "--seed", "9"]
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    first.pop("elapsed_seconds"), second.pop("elapsed_seconds")
    assert first == second


def test_verify_failure_exit(monkeypatch, capsys):
    from vcfold import verify

    def broken(**kwargs):
        res = verify.SuiteResult("sauer", "always fails")
        res.fail("forced", SetFamily(2, [0, 3]))
        return res

    monkeypatch.setitem(verify.SUITES, "sauer", broken)
    code, rep = run(capsys, "verify", "sauer")
    assert code == EXIT_VIOLATION
    suite = rep["result"]["suites"][0]
    assert familyfile.parse(suite["counterexample"]) == SetFamily(2, [0, 3])
