import json
import subprocess
import sys
from fractions import Fraction

import pytest

from branchforge.cli import _jsonable, main
from branchforge.corpus import corpus

QUARTIC_TEXT = "(y^2-x^3)^2-4*x^5*y-x^7"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, [json.loads(line) for line in out.splitlines()]


def test_irreducible_quartic(capsys):
    code, (report,) = run_json(capsys, "irreducible", QUARTIC_TEXT)
    assert code == 0
    assert report["verdict"] == "yes"
    assert report["data"]["semigroup"] == [4, 6, 13]
    assert report["data"]["polygons"] == [[[0, 6], [6, 0]], [[0, 26], [26, 0]]]
    assert set(report) == {"command", "input", "verdict", "data", "witness", "timing_ms"}
    assert report["timing_ms"] is None


def test_milnor_cusp(capsys):
    code, (report,) = run_json(capsys, "milnor", "y^2-x^3")
    assert code == 0
    data = report["data"]
    assert (data["resultant"], data["semigroup"], data["lattice"], data["agreement"]) == (2, 2, 2, True)


def test_equisingular_both_rejects(capsys):
    code, (report,) = run_json(capsys, "equisingular", "--method=both", "y^2-x^3-l*x^2")
    assert code == 1
    assert report["verdict"] == "no"
    assert report["witness"]["term"] == [2, 0]


def test_equisingular_accepts(capsys):
    code, (report,) = run_json(capsys, "equisingular", "--method", "both", "y^2-x^3+l*x^4")
    assert code == 0
    assert report["verdict"] == "yes"


def test_json_is_byte_stable(capsys):
    first = run(capsys, "irreducible", "--json", QUARTIC_TEXT)
    second = run(capsys, "irreducible", "--json", QUARTIC_TEXT)
    assert first == second
    assert first[1].endswith("\n")


def test_timing_flag(capsys):
    _, (report,) = run_json(capsys, "milnor", "--timing", "y^2-x^3")
    assert isinstance(report["timing_ms"], float)


def test_rational_printing():
    assert _jsonable({"a": Fraction(3), "b": Fraction(-2, 3), "c": (Fraction(1, 2),)}) == {
        "a": 3, "b": "-2/3", "c": ["1/2"]}


@pytest.mark.parametrize("text", ["y^-1", "y^2 - z", "(y^2", "", "y/x"])
def test_input_errors_exit_2(capsys, text):
    code, (report,) = run_json(capsys, "irreducible", text)
    assert code == 2
    assert report["verdict"] == "error"
    assert report["data"]["message"]


def test_family_rejected_where_branch_expected(capsys):
    code, _ = run(capsys, "irreducible", "y^2-x^3+l*x^4")
    assert code == 2


def test_semigroup_forms(capsys):
    code, (a,) = run_json(capsys, "semigroup", "4,6,13")
    assert code == 0
    assert a["data"]["conductor"] == 16
    assert a["data"]["char"]["b"] == [6, 7]
    code, (b,) = run_json(capsys, "semigroup", QUARTIC_TEXT)
    assert code == 0 and b["data"]["semigroup"] == [4, 6, 13]
    code, (bad,) = run_json(capsys, "semigroup", "4,6,12")
    assert code == 1 and bad["witness"]["condition"] == "invalid-semigroup"


def test_other_commands(capsys):
    code, (roots,) = run_json(capsys, "approx-roots", QUARTIC_TEXT)
    assert code == 0 and roots["data"]["roots"] == ["y", "y^2 - x^3"]
    code, (ledger,) = run_json(capsys, "resolve", QUARTIC_TEXT)
    assert code == 0 and [row["theta"] for row in ledger["data"]["ledger"]] == [1, 4]
    code, (poly,) = run_json(capsys, "jacobian-polygon", "y^2-x^3+l*x^4")
    assert code == 0 and poly["data"]["polygon"]
    code, (pz,) = run_json(capsys, "puiseux", "y^2-x^3")
    assert code == 0 and pz["data"]["count"] == 1 and pz["data"]["branches"][0]["char"] == [2, 3]
    code, (two,) = run_json(capsys, "puiseux", "y^2-x^2")
    assert code == 1 and two["data"]["count"] == 2


def test_reducible_is_no(capsys):
    code, (report,) = run_json(capsys, "irreducible", "y^2-x^2")
    assert code == 1
    assert report["witness"]


def test_msqh(capsys, tmp_path):
    spec = tmp_path / "spec.txt"
    spec.write_text("levels 2\n2 0 0 1\n2 0 1 1\n")
    code, (report,) = run_json(capsys, "msqh", "--spec", str(spec), QUARTIC_TEXT)
    assert code == 0 and report["data"]["generic"] is True
    spec.write_text("levels 2\n2 0 0 1\n2 0 1 2\n")
    code, (report,) = run_json(capsys, "msqh", "--spec", str(spec), QUARTIC_TEXT)
    assert code == 1 and report["witness"]["condition"] == "repeated-root"
    code, _ = run_json(capsys, "msqh", "--spec", str(tmp_path / "missing"), QUARTIC_TEXT)
    assert code == 2


def test_batch_preserves_order(capsys, tmp_path):
    batch = tmp_path / "inputs.txt"
    batch.write_text("# comment\ny^2-x^3\n\ny^2-x^2\n" + QUARTIC_TEXT + "\n")
    code, reports = run_json(capsys, "irreducible", "--batch", str(batch), "--workers", "3")
    assert code == 1
    assert [r["input"] for r in reports] == ["y^2-x^3", "y^2-x^2", QUARTIC_TEXT]
    assert [r["verdict"] for r in reports] == ["yes", "no", "yes"]
    code, text = run(capsys, "irreducible", "--batch", str(batch))
    assert text.count("verdict:") == 3


def test_exit_codes_on_corpus(capsys):
    branches = corpus(31, 12, max_n=6, max_exp=20)
    for b in branches:
        code, (report,) = run_json(capsys, "irreducible", str(b.poly))
        assert code == 0 and report["data"]["semigroup"] == list(b.semigroup.gens)
    for a, b in zip(branches[::2], branches[1::2]):
        code, (report,) = run_json(capsys, "irreducible", f"({a.poly})*({b.poly})")
        assert code == 1 and report["witness"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "branchforge", "milnor", "--json", "y^2-x^3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["data"]["agreement"] is True
    bad = subprocess.run([sys.executable, "-m", "branchforge", "irreducible", "y^-1"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2
