import json
import subprocess
import sys

import pytest

from fano221.cli import main
from fano221.exact.rational import parse


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_case5(capsys):
    code, out, _ = run(capsys, "classify", "--coeffs", "0,1,0,0,0,1")
    data = json.loads(out)
    assert code == 0 and data["case"] == 5 and data["git"]["row"] == "f1+f5"


def test_classify_case3_markdown(capsys):
    code, out, _ = run(capsys, "classify", "--coeffs", "1,0,0,0,0,1", "--format", "md")
    assert code == 0 and "**case**: `3`" in out


def test_classify_fractions_roundtrip(capsys):
    code, out, _ = run(capsys, "classify", "--coeffs", "0,0,4/3,1/3,0,2/3")
    data = json.loads(out)
    assert code == 0
    assert [parse(x) for x in data["input"]] == [0, 0, parse("4/3"), parse("1/3"), 0, parse("2/3")]


def test_classify_singular_exit_1(capsys):
    code, out, err = run(capsys, "classify", "--coeffs", "0,0,1,1,0,1")
    assert code == 1 and out == ""
    assert "s0*s4 - s1*s3 + s2^2 + 2*s2*s5 - 3*s5^2" in err


@pytest.mark.parametrize("coeffs", ["1,2,3", "0,0,0,0,0,0", "1,x,0,0,0,1", "1,1/0,0,0,0,1"])
def test_classify_bad_input_exit_2(capsys, coeffs):
    code, _, err = run(capsys, "classify", "--coeffs", coeffs)
    assert code == 2 and err


def test_usage_errors(capsys):
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys, "invariants", "--target", "nope")[0] == 2
    assert run(capsys)[0] == 2


def test_invariants_surface_h(capsys):
    code, out, _ = run(capsys, "invariants", "--target", "surface-H")
    data = json.loads(out)
    assert code == 0
    assert (data["tau"], data["S"], data["beta"]) == ("3/2", "51/112", "61/112")


def test_invariants_delta(capsys):
    code, out, _ = run(capsys, "invariants", "--target", "delta-generic")
    data = json.loads(out)
    assert data["bound"] == "112/111"
    assert data["candidates"] == ["112/51", "112/111", "112/111"]


def test_invariants_beta_curve(capsys):
    code, out, _ = run(capsys, "invariants", "--target", "beta-curve")
    data = json.loads(out)
    assert code == 0 and data["worst"] == "99/112" and data["worst_n"] == 6
    assert [r["n"] for r in data["rows"]] == [0, 2, 4, 6]


def _strip_timing(text):
    data = json.loads(text)
    data.pop("timing")
    return data


def test_verify_delta_passes_and_is_deterministic(capsys):
    code, out1, _ = run(capsys, "verify", "delta")
    _, out2, _ = run(capsys, "verify", "delta")
    assert code == 0
    assert _strip_timing(out1) == _strip_timing(out2)
    values = {c["name"]: c["computed"] for c in json.loads(out1)["checks"]}
    for expected in ("51/112", "19/56", "111/56", "9/112", "111/112", "112/111", "27/224", "99/112"):
        assert expected in values.values()


def test_verify_core_and_chow_pass(capsys):
    for suite in ("core", "chow", "zariski"):
        assert run(capsys, "verify", suite, "--format", "md")[0] == 0


def test_verify_classify_short(capsys):
    code, out, _ = run(capsys, "verify", "classify", "--count", "2", "--seed", "5")
    assert code == 0 and json.loads(out)["seed"] == 5


def test_verify_action_reports_resultant_mismatch(capsys):
    code, out, _ = run(capsys, "verify", "action")
    failed = [c["name"] for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert code == 1 and failed == ["Res_c(g1, g2) = h^3"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fano221", "invariants", "--target", "surface-E"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["S"] == "19/56"
