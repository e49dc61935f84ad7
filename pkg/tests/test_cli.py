import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from coalg.cli import run

from cli_cases import CASES

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def in_data_dir(monkeypatch):
    monkeypatch.chdir(DATA)
    monkeypatch.delenv("COALG_MAX_DIM", raising=False)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, _ = invoke(CASES[name])
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("name", ["incidence_diamond_both", "verify_matrix2", "coradical_diamond_json"])
def test_repeat_runs_are_byte_identical(name):
    first = invoke(CASES[name])[1]
    assert all(invoke(CASES[name])[1] == first for _ in range(3))


def test_incidence_chain2_rows():
    code, out, _ = invoke(["incidence", "--poset", "chain2.poset", "--integrals", "right", "--all-u", "--json"])
    rows = {r["u"]: (r["dim_M"], r["dim_integrals"]) for r in json.loads(out)["rows"]}
    assert code == 0 and rows == {"0": (2, 1), "1": (1, 2)}


def test_check_bad_coalgebra():
    code, out, _ = invoke(["check", "bad.coalg.json"])
    assert code == 1 and "FAIL" in out and "axiom failure" in out


def test_cofrobenius_antichain_json():
    code, out, _ = invoke(["cofrobenius", "antichain3.poset", "--json"])
    doc = json.loads(out)
    assert code == 0
    assert doc["right_co_frobenius"]["holds"] and doc["left_co_frobenius"]["holds"]


def test_usage_errors_exit_2():
    assert invoke(["bogus"])[0] == 2
    assert invoke(["coradical", "chain2.poset", "--nope"])[0] == 2
    assert invoke(["coradical"])[0] == 2
    assert invoke(["incidence", "chain2.poset"])[0] == 2
    assert invoke(["coradical", "chain2.poset", "--field", "Fp:4"])[0] == 2


def test_missing_file_and_parse_errors():
    code, _, err = invoke(["coradical", "missing.poset"])
    assert code == 1 and "missing.poset" in err
    code, _, err = invoke(["coradical", "cyclic.poset"])
    assert code == 1 and "line 3" in err and "cycle" in err


def test_json_parse_error_has_line_and_column(tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"basis": ["g"],\n "delta": {,}\n}')
    code, _, err = invoke(["check", str(bad)])
    assert code == 1 and "broken.json:2:" in err


def test_max_dim_cap(monkeypatch):
    monkeypatch.setenv("COALG_MAX_DIM", "5")
    code, _, err = invoke(["coradical", "diamond.poset"])
    assert code == 1 and "COALG_MAX_DIM" in err


def test_hom_side_mismatch(tmp_path):
    doc = json.loads((DATA / "chain2_Er1.json").read_text())
    doc["side"] = "left"
    doc["rho"] = {"e[1,1]": [["e[1,1]", "e[1,1]", 1, 1]]}
    doc["coalgebra"] = str(DATA / "chain2.poset")
    left = tmp_path / "left.json"
    left.write_text(json.dumps(doc))
    code, _, err = invoke(["hom", "--comodule", "chain2_Er0.json", "--comodule", str(left)])
    assert code == 1 and "side mismatch" in err


def test_prime_field_flag():
    code, out, _ = invoke(["incidence", "diamond.poset", "--all-u", "--field", "Fp:3"])
    assert code == 0 and "NO" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "coalg", "cofrobenius", "antichain3.poset"],
                         capture_output=True, text=True, cwd=DATA)
    assert res.returncode == 0
    assert res.stdout == (GOLDEN / "cofrobenius_antichain3.txt").read_text()
