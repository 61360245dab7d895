import io
import json
import random
import subprocess
import sys

import pytest

from bandkit.cli import main
from bandkit.finite import adjoin_identity, dump_band, left_zero
from bandkit.schemes import dump_scheme, scheme_from_word
from bandkit.varieties import parse_variety, satisfies
from bandkit.words import parse_word

from conftest import W, full_content_word


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (["canon", "xyx"], "xxyyxx"),
    (["canon", "xyx", "--variety", "A3"], "xxyx"),
    (["canon", "xyx", "--variety", "B2"], "xy"),
    (["canon", "xyzx", "--variety", "B2+B2~"], "xyz|yzx"),
    (["canon", "x1 x2 x1"], "x1 x1 x2 x2 x1 x1"),
    (["canon", "xy", "--variety", "T"], ""),
])
def test_canon(argv, expected):
    assert run(*argv) == (0, expected + "\n")


@pytest.mark.parametrize("argv, code, text", [
    (["check", "xx", "x", "--variety", "BAND"], 0, "HOLDS"),
    (["check", "xyxzx", "xyzx", "--variety", "B2+B2~"], 0, "HOLDS"),
    (["check", "xyxzx", "xyzx", "--variety", "A3"], 1, "FAILS"),
    (["check", "xyxy", "xy"], 0, "HOLDS"),
])
def test_check(argv, code, text):
    assert run(*argv) == (code, text + "\n")


@pytest.mark.parametrize("argv, count", [
    (["freeband", "-k", "2", "--count-only"], "6"),
    (["freeband", "-k", "3", "--count-only"], "159"),
    (["freeband", "--variety", "B2", "-k", "2", "--count-only"], "4"),
    (["freeband", "-k", "1"], "1"),
])
def test_freeband(argv, count):
    assert run(*argv) == (0, count + "\n")


def test_freeband_table(tmp_path):
    path = tmp_path / "f.json"
    assert run("freeband", "--variety", "B2", "-k", "2", "--table", str(path)) == (0, "4\n")
    data = json.loads(path.read_text())
    assert data["size"] == 4 and len(data["table"]) == 4
    assert run("band", "check", str(path)) == (0, "OK: band of size 4\n")


def test_usage_errors(capsys):
    assert run("canon", "x!y")[0] == 2
    assert run("check", "xy", "x", "--variety", "Q7")[0] == 2
    assert run("freeband", "-k", "0")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("scheme-solve", "/nonexistent.json", "--variety", "A3")[0] == 2
    assert run("--budget", "lots", "freeband", "-k", "2")[0] == 2
    assert "error" in capsys.readouterr().err


def test_budget_exit_code(monkeypatch):
    assert run("--budget", "100", "freeband", "-k", "3", "--count-only")[0] == 3
    monkeypatch.setenv("BANDKIT_BUDGET", "elements=10")
    assert run("freeband", "-k", "3", "--count-only")[0] == 3
    assert run("--budget", "elements=1000", "freeband", "-k", "3")[0:2] == (0, "159\n")


def test_scheme_verify(tmp_path):
    path = tmp_path / "s.json"
    dump_scheme(scheme_from_word(W("x1x2x3x4x5"), 5), path)
    code, text = run("scheme-verify", str(path), "--variety", "B2")
    assert code == 0
    assert text.splitlines() == ["dependency: true", "c1: true", "c2: true",
                                 "essential: true", "permutation: 1 2 3 4 5"]
    dump_scheme(scheme_from_word(W("x1x2x3x4x5"), 5).replace((1, 2), W("x1x3x4x5")), path)
    code, text = run("scheme-verify", str(path), "--variety", "B2")
    assert code == 1
    assert "dependency: false" in text
    assert "violation D (1,2): x1 x3 x4 x5 = " in text
    dump_scheme(scheme_from_word(W("x1x1x2"), 3), path)
    code, text = run("scheme-verify", str(path), "--variety", "B2")
    assert code == 1 and "essential: false" in text and "permutation: none" in text


def test_scheme_solve(tmp_path):
    rng = random.Random(3)
    path = tmp_path / "s.json"
    w = full_content_word(rng, 7, 12)
    dump_scheme(scheme_from_word(w, 7), path)
    code, text = run("scheme-solve", str(path), "--variety", "A3")
    assert code == 0
    got = parse_word(text.strip())
    assert satisfies(parse_variety("A3"), got, w)
    assert run("check", text.strip(), " ".join(f"x{a}" for a in w),
               "--variety", "A3")[0] == 0
    code, text = run("scheme-solve", str(path), "--variety", "A3+A3~")
    assert code == 0 and satisfies(parse_variety("A3+A3~"), parse_word(text.strip()), w)
    dump_scheme(scheme_from_word(W("x1x2x3x4x5"), 5).replace((1, 2), W("x1x3x4x5")), path)
    code, text = run("scheme-solve", str(path), "--variety", "A3")
    assert code == 1
    lines = text.splitlines()
    assert lines[0] == "NO-SOLUTION" and lines[1].startswith("witness ")
    code, text = run("scheme-solve", str(path), "--variety", "BAND")
    assert code == 1 and text.startswith("NO-SOLUTION")


def test_band_commands(tmp_path):
    lz = tmp_path / "lz2.json"
    dump_band(left_zero(2), lz)
    assert run("band", "check", str(lz)) == (0, "OK: band of size 2\n")
    assert run("band", "eval", str(lz), "--word", "xy", "--assign", "x=0,y=1") == (0, "0\n")
    assert run("band", "eval", str(lz), "--word", "xy", "--assign", "x=0")[0] == 2
    assert run("band", "eval", str(lz), "--word", "xy", "--assign", "x=0,y=7")[0] == 2
    op = tmp_path / "f.json"
    op.write_text('{"arity": 2, "values": [0, 1, 0, 1]}')
    assert run("band", "induced", str(lz), "--op-file", str(op)) == (0, "x2\n")
    op.write_text('{"arity": 2, "values": [1, 1, 1, 1]}')
    assert run("band", "induced", str(lz), "--op-file", str(op)) == (1, "NOT-INDUCED\n")
    b2 = tmp_path / "b2.json"
    dump_band(adjoin_identity(left_zero(2)), b2)
    assert run("band", "eval", str(b2), "--word", "xy", "--assign", "x=e,y=1") == (0, "0\n")
    assert run("band", "eval", str(b2), "--word", "yx", "--assign", "x=e,y=2") == (0, "1\n")
    bad = tmp_path / "bad.json"
    bad.write_text('{"size": 2, "table": [[1, 1], [1, 1]]}')
    code, text = run("band", "check", str(bad))
    assert code == 1 and text.startswith("NOT-A-BAND")
    assert run("band", "induced", str(lz))[0] == 2


def test_deterministic(tmp_path):
    path = tmp_path / "s.json"
    dump_scheme(scheme_from_word(W("x3x1x4x2x5x1x6"), 6), path)
    for argv in (["scheme-solve", str(path), "--variety", "B3+B3~"],
                 ["scheme-verify", str(path), "--variety", "A4"],
                 ["freeband", "--variety", "A3", "-k", "3"]):
        assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bandkit", "check", "xyx", "xy",
                           "--variety", "B2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "HOLDS\n"
