import json
import subprocess
import sys
import warnings
from importlib import resources

import pytest

from quiverhh.cli import main

FIX = resources.files("quiverhh.fixtures")


def fx(name):
    return str(FIX.joinpath(f"{name}.qv"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_prints_dim_and_basis(capsys):
    code, out, _ = run(capsys, "check", fx("core_C"))
    assert code == 0
    assert "dim = 10" in out and "a2*b1" in out
    code, out, _ = run(capsys, "check", fx("A2"))
    assert "dim = 3" in out and "basis: e1, e2, a" in out


def test_loop_exit_3(capsys):
    code, _, err = run(capsys, "check", fx("loop"))
    assert code == 3 and "NotFiniteDimensional" in err


def test_parse_error_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.qv"
    f.write_text("vertices 1 2\narrow a: 1 -> \n")
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "check", str(tmp_path / "missing.qv"))
    assert code == 2


def test_cyclic_core_exit_2(tmp_path, capsys):
    f = tmp_path / "cyc.qv"
    f.write_text("vertices 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelations\na*b\nb*a\n")
    code, _, err = run(capsys, "extend", str(f))
    assert code == 2 and "NotTriangular" in err


def test_extend_text(capsys):
    code, out, _ = run(capsys, "extend", fx("core_C"))
    assert code == 0
    assert "W = (a1*b1 + a2*b1)*g1 + (a1*b2 - a2*b2)*g2" in out
    assert "∂a1 W = b1*g1 + b2*g2" in out
    assert "2*b1*g1 = ∂a1 W + ∂a2 W" in out
    assert "(n = 2)" in out


def test_extend_hereditary_notice(capsys):
    _, out, _ = run(capsys, "extend", fx("A3"))
    assert "B = C" in out


def test_hh_subcommand(capsys):
    _, out, _ = run(capsys, "hh", fx("core_C"), "--algebra", "B", "--coeff", "E", "--degree", "1", "--json")
    assert json.loads(out)["dim"] == 2
    _, out, _ = run(capsys, "hh", fx("core_C"), "--degree", "0", "--json")
    r = json.loads(out)
    assert r["dim"] == 1 and r["center_dim"] == 1
    _, out, _ = run(capsys, "hh", fx("A2"), "--degree", "1", "--json")
    assert json.loads(out)["dim"] == 0
    code, _, _ = run(capsys, "hh", fx("core_C"), "--coeff", "E")
    assert code == 2


def test_verify_ses_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify-ses", fx("core_C"))
    assert code == 0 and out.rstrip().endswith("verify-ses: PASS")
    code, out, _ = run(capsys, "verify-ses", fx("broken_B"), "--json")
    r = json.loads(out)
    assert code == 4 and r["failed"] == ["jacobian-ideal"]


def test_cross_report_dims(capsys):
    _, a, _ = run(capsys, "verify-ses", fx("core_C"), "--json")
    _, b, _ = run(capsys, "verify-ses", fx("core_C_prime"), "--json")
    da, db = json.loads(a)["dims"], json.loads(b)["dims"]
    assert da == db


@pytest.mark.parametrize("cmd", ["check", "basis", "dims", "relations", "extend", "verify-ses", "bricks"])
def test_json_is_byte_stable(capsys, cmd):
    _, first, _ = run(capsys, cmd, fx("core_C"), "--json")
    _, second, _ = run(capsys, cmd, fx("core_C"), "--json")
    assert first == second
    json.loads(first)


def test_field_flag(capsys):
    _, out, _ = run(capsys, "verify-ses", fx("core_C"), "--field", "F5", "--json")
    r = json.loads(out)
    assert r["field"] == "F5" and r["passed"]
    code, _, _ = run(capsys, "check", fx("core_C"), "--field", "R")
    assert code == 2


def test_char_two_infinite(capsys):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        code, _, _ = run(capsys, "extend", fx("core_C"), "--field", "F2")
    assert code == 3


def test_max_degree_flag_and_env(capsys, monkeypatch):
    code, _, _ = run(capsys, "check", fx("extension_B"), "--max-degree", "3")
    assert code == 3
    monkeypatch.setenv("QUIVERHH_MAX_DEGREE", "3")
    code, _, _ = run(capsys, "check", fx("extension_B"))
    assert code == 3
    code, _, _ = run(capsys, "check", fx("extension_B"), "--max-degree", "8")
    assert code == 0


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", fx("A2"), "--bogus"])
    assert info.value.code == 2


def test_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO("vertices 1 2\narrow a: 1 -> 2\n"))
    code, out, _ = run(capsys, "check", "-")
    assert code == 0 and "dim = 3" in out


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "quiverhh.cli", "bricks", fx("core_C_prime")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "orthogonal bricks: yes" in proc.stdout
