import json
import subprocess
import sys
from fractions import Fraction

import pytest

from dilates import cli
from dilates import ordgroup as og
from dilates.alphafield import ctx_new
from dilates.freewords import parse_word


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_beta_golden(capsys):
    code, rec = run_json(capsys, "beta", "--k", "1", "--l", "2", "--width", "1e-9")
    assert code == 0
    lo, hi = Fraction(rec["results"]["rho"]["lo"]), Fraction(rec["results"]["rho"]["hi"])
    assert hi - lo <= Fraction(1, 10**9)
    # rho = (sqrt(5) - 1)/2 lies in [lo, hi] iff (2 lo + 1)^2 <= 5 <= (2 hi + 1)^2
    assert (2 * lo + 1) ** 2 <= 5 <= (2 * hi + 1) ** 2
    assert rec["results"]["rho"]["lo_decimal"].startswith("0.618033988")


def test_beta_exact_and_2_3(capsys):
    code, rec = run_json(capsys, "beta", "--k", "1", "--l", "1")
    assert code == 0 and rec["results"]["rho_exact"] == "1"
    code, rec = run_json(capsys, "beta", "--k", "2", "--l", "3", "--width", "1e-4")
    assert code == 0 and rec["results"]["rho"]["lo_decimal"].startswith("0.84837")


def test_verify_commands(capsys):
    code, rec = run_json(capsys, "verify-pair", "--k", "2", "--l", "3")
    assert code == 0 and rec["results"]["size"] == 3
    code, rec = run_json(capsys, "verify-grid", "--k", "1", "--l", "2", "--r", "3")
    assert code == 0 and rec["results"]["size"] == 6
    code, rec = run_json(capsys, "verify-grid", "--k", "2", "--l", "2", "--r", "4")
    assert code == 0 and rec["results"]["size"] == 10
    code, rec = run_json(capsys, "verify-pair", "--k", "3", "--l", "2")
    assert code == 0 and rec["results"]["size"] == 3


def test_sumset_z_and_zn(capsys):
    code, rec = run_json(capsys, "sumset", "--k", "1", "--l", "3", "--set", "0,1,3,4")
    assert code == 0 and rec["results"]["size"] == 12
    assert any(c["rhs"] == 12 and c["lhs"] == 12 for c in rec["checks"])
    code, rec = run_json(capsys, "sumset", "--k", "1", "--l", "2", "--set", "(0,0);(1,0);(0,1)")
    assert code == 0 and rec["inputs"]["domain"] == "zn"
    assert rec["results"]["cosets"]["q"] == 3 and rec["results"]["size"] == 9
    code, rec = run_json(capsys, "sumset", "--k", "2", "--l", "-2", "--set", "(0,0);(1,0)")
    assert code == 0 and "cosets" not in rec["results"]


def test_chi_and_csv(capsys):
    code, rec = run_json(capsys, "chi", "--k", "2", "--l", "3", "--r", "3", "--max-diameter", "6")
    assert code == 0
    res = rec["results"]
    assert res["minimum"] == 8 and "0,1,3" in res["witnesses"] and res["certified"]
    code, out, _ = run(capsys, "chi", "--k", "2", "--l", "3", "--r", "3", "--max-diameter", "6",
                       "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("k,l,r")
    code, out, _ = run(capsys, "bounds", "--k", "2", "--l", "3", "--r", "3", "--format", "csv")
    assert code == 0 and "nathanson,lower,chi_Z,8" in out


def test_word_commands(capsys):
    code, rec = run_json(capsys, "word", "--proper-power", "a^2 b^3 a^-3 b^-2")
    assert code == 0 and rec["results"]["proper_power"] is None
    code, rec = run_json(capsys, "word", "a b a b a b")
    assert rec["results"]["proper_power"] == {"root": "a b", "exponent": 3}
    code, rec = run_json(capsys, "word", "--relator", "--k", "2", "--l", "-2")
    assert rec["results"]["proper_power"]["exponent"] == 2


def test_presentation_and_theta(capsys):
    code, rec = run_json(capsys, "presentation", "--k", "2", "--l", "3", "--r", "3")
    assert code == 0
    code, rec = run_json(capsys, "presentation", "--k", "2", "--l", "3", "--r", "2",
                         "--assignment", "theta")
    assert code == 1 and not rec["checks"][0]["pass"]


def test_cone_check_and_chi5(capsys):
    code, rec = run_json(capsys, "cone-check", "--k", "2", "--l", "3", "--r", "2", "--samples", "40")
    assert code == 0 and rec["results"]["violations"] == []
    code, rec = run_json(capsys, "chi5", "--k", "1", "--l", "2",
                         "--element", "(0, 0; 1)", "--element", "(0, 0; 1)", "--element", "(0, 0; 1)")
    assert code == 1 and not rec["checks"][0]["pass"]


@pytest.mark.parametrize("argv", [
    ["sumset", "--k", "1", "--l", "2", "--set", "0,x"],
    ["sumset", "--k", "0", "--l", "2", "--set", "0,1"],
    ["sumset", "--k", "1", "--l", "2", "--set", "(0,0);(1)"],
    ["beta", "--k", "0", "--l", "2"],
    ["beta", "--k", "1", "--l", "2", "--width", "tiny"],
    ["verify-grid", "--k", "1", "--l", "2", "--r", "0"],
    ["chi", "--k", "1", "--l", "2", "--r", "4", "--max-diameter", "1"],
    ["word", "a^x"],
    ["chi5", "--k", "1", "--l", "2", "--element", "(a; 1)"],
    ["verify-pair", "--k", "1", "--l", "2", "--format", "csv"],
    ["presentation", "--k", "2", "--l", "3", "--r", "3", "--assignment", "theta"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["beta", "--l", "2"])
    assert exc.value.code == 2


def test_json_is_deterministic(capsys):
    argv = ["cone-check", "--k", "2", "--l", "3", "--r", "2", "--samples", "30", "--seed", "7",
            "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_output_file_and_env_format(tmp_path, monkeypatch, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "verify-pair", "--k", "1", "--l", "2", "--format", "json",
                       "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["command"] == "verify-pair"
    monkeypatch.setenv(cli.FORMAT_ENV, "json")
    code, out, _ = run(capsys, "verify-pair", "--k", "1", "--l", "2")
    assert json.loads(out)["results"]["size"] == 3


def test_text_format(capsys):
    code, out, _ = run(capsys, "verify-pair", "--k", "2", "--l", "3")
    assert out.startswith("# verify-pair") and "[PASS]" in out and "[FAIL]" not in out


def test_printed_literals_round_trip(capsys):
    _, rec = run_json(capsys, "sumset", "--k", "1", "--l", "2", "--set", "4,0,2,2")
    assert cli.parse_zset(rec["results"]["X"]) == (0, 2, 4)
    assert cli.render_zset(cli.parse_zset(rec["results"]["sumset"])) == rec["results"]["sumset"]
    _, rec = run_json(capsys, "sumset", "--k", "1", "--l", "2", "--set", "(1,2);(0,0)")
    assert cli.render_znset(cli.parse_znset(rec["results"]["X"])) == rec["results"]["X"]
    _, rec = run_json(capsys, "verify-grid", "--k", "2", "--l", "3", "--r", "2")
    c = ctx_new(2, 3)
    for s in rec["results"]["X"] + rec["results"]["product_set"]:
        assert str(og.parse_element(s, c)) == s
    _, rec = run_json(capsys, "word", "x1^2 x3 x1^-1")
    assert str(parse_word(rec["results"]["word"])) == rec["results"]["word"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dilates", "verify-pair", "--k", "1", "--l", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "[PASS]" in out.stdout
