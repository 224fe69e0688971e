import json
import shutil
import subprocess
import sys

import pytest

from bulkpot import catalog_lookup
from bulkpot.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list_surfaces(capsys):
    code, out, _ = run(capsys, "list-surfaces", "--format", "json")
    assert code == 0
    names = [r["name"] for r in json.loads(out)]
    assert names[:2] == ["X2", "X2b"] and "X10" in names


def test_potential_text_format(capsys):
    code, out, _ = run(capsys, "potential", "X2", "--u", "2,2", "--bulk", "a4=sym")
    assert code == 0
    assert "(e^{-a4} + e^{a4}) y2^-1 T^{2}" in out
    assert "monotone" in out


def test_potential_json_with_alpha(capsys):
    code, out, _ = run(capsys, "potential", "X2", "--alpha", "1/10", "--bulk", "zero", "--format", "json")
    doc = json.loads(out)
    exps = {t["exp"] for term in doc["terms"] for t in term["coeff"]}
    assert code == 0
    assert exps == {"2", "19/10", "21/10"}


def test_critical_json_schema(capsys):
    code, out, _ = run(capsys, "critical", "X2", "--order", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["nondegenerate_count"] == 5
    p = doc["points"][0]
    assert {"y", "multiplicity", "hessian_log_det", "residual_valuation", "lifted"} <= set(p)


def test_order_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("BULKPOT_ORDER", "3/2")
    code, out, _ = run(capsys, "critical", "X5", "--format", "json")
    assert code == 0 and json.loads(out)["order"] == "3/2"


def test_critical_expectation_exit_code(capsys):
    assert run(capsys, "critical", "X2", "--bulk", "zero", "--expect", "3")[0] == 0
    assert run(capsys, "critical", "X2", "--bulk", "zero", "--expect", "5")[0] == 1


def test_admissible(capsys):
    code, out, _ = run(capsys, "admissible", "--n", "4", "--center", "1", "--poly")
    assert code == 0
    assert "5 admissible tuples" in out
    assert "P_1(X,Y)" in out and "1" in out.splitlines()[-1]


def test_chain_solve(capsys):
    code, out, _ = run(capsys, "chain-solve", "--n", "3", "--seed", "2", "--format", "json")
    assert code == 0 and json.loads(out)["roots"]


def test_milnor(capsys):
    code, out, _ = run(capsys, "milnor", "--n", "3")
    assert code == 0 and "degenerate" in out


def test_verify_appendix(capsys):
    code, out, _ = run(capsys, "verify-appendix", "--workers", "3")
    assert code == 0 and "BAD" not in out


def test_parse_spec(capsys, tmp_path):
    path = tmp_path / "x8.json"
    path.write_text(json.dumps(catalog_lookup("X8").spec.to_document()))
    code, out, _ = run(capsys, "parse-spec", str(path))
    assert code == 0 and "8 facets" in out
    code, out, _ = run(capsys, "critical", str(path), "--u", "5/2,3", "--bulk", "a1=2,a3=-2,a4=3,a5=-2,a6=2")
    assert code == 0 and "8 points, 8 nondegenerate" in out


@pytest.mark.parametrize(
    "argv",
    [["potential", "X42"], ["critical", "X2", "--bulk", "a4=sym"], ["parse-spec", "/nonexistent.json"],
     ["critical", "X2", "--u", "9,9"]],
)
def test_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("bulkpot:")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bulkpot", "admissible", "--n", "3", "--center", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "6 admissible tuples" in proc.stdout


@pytest.mark.skipif(shutil.which("bulkpot") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["bulkpot", "milnor", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
