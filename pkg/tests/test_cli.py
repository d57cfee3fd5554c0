import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from padichyp.cli import padic_from_json, run_command, ser
from padichyp.padic import padic_from_rational

from conftest import rationals

GOLDEN = Path(__file__).parent / "golden"

# (name, argv, expected exit code)
GOLDEN_CASES = [
    ("gammap", ["gammap", "--prime", "7", "--prec", "4", "1"], 0),
    ("gsymbol", ["gsymbol", "--prime", "7", "--prec", "4", "1/6", "1/6"], 0),
    ("orbit", ["orbit", "--prime", "11", "--params", "1/3"], 0),
    ("kummer9", ["kummer", "--which", "9"], 0),
    ("alpha", ["alpha", "--params", "1/3,2/5,3/4", "--point", "inf", "--index", "1", "--shift", "1"], 0),
    ("kd", ["kd", "--prime", "7", "--params", "1/6,1/6,5/6", "--prec", "6"], 0),
    ("young", ["young", "--prime", "7", "--params", "1/3,2/3"], 0),
    ("identity", ["identity", "--prime", "7", "--params", "1/6,1/6,5/6"], 0),
    ("kummer5", ["kummer", "--which", "5", "--params", "1/3,2/5,3/7", "--order", "10"], 1),
]


def _run(argv, capsys):
    code, _ = run_command(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name,argv,code", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(name, argv, code, capsys):
    got_code, out, _ = _run(argv, capsys)
    assert got_code == code
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_gammap_value(capsys):
    _, out, _ = _run(["gammap", "--prime", "7", "--prec", "4", "1"], capsys)
    val = json.loads(out)["values"][0]["value"]
    assert padic_from_json(val, 7).agreement(-1) >= 4


def test_kd_verdict(capsys):
    code, out, _ = _run(["kd", "--prime", "7", "--params", "1/6,1/6,5/6"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "pass" and rep["agreement"] >= 4


def test_deterministic(capsys):
    argv = ["xi", "--prime", "7", "--params", "1/3,2/5,3/4", "--point", "1"]
    _, a, _ = _run(argv, capsys)
    _, b, _ = _run(argv, capsys)
    assert a == b


@pytest.mark.parametrize("argv", [
    ["gsymbol", "1/3", "x"],
    ["gammap", "--prime", "9", "1"],
    ["gammap", "--prime", "7", "1/7"],
    ["bogus"],
    ["kd", "--params", "1/2,1/3"],
    ["ratio", "--params", "1/6,1/6,5/6", "--at", "1/7"],
])
def test_input_errors_exit_2(argv, capsys):
    code, out, err = _run(argv, capsys)
    assert code == 2 and out == "" and err


def test_text_output(capsys):
    code, out, _ = _run(["orbit", "--prime", "11", "--params", "1/3", "--output", "text"], capsys)
    assert code == 0 and "period: 2" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    _run(["gammap", "--prime", "5", "2", "--out", str(target)], capsys)
    assert json.loads(target.read_text())["command"] == "gammap"


def test_env_override(monkeypatch, capsys):
    monkeypatch.setenv("PADICHYP_PREC", "3")
    _, out, _ = _run(["gammap", "--prime", "7", "1"], capsys)
    assert json.loads(out)["inputs"]["prec"] == 3


def test_suite_quick_runs(capsys):
    code, out, _ = _run(["suite", "--quick"], capsys)
    rep = json.loads(out)
    assert code == (0 if rep["verdict"] == "pass" else 1)
    assert "unitroot.kd_example" in rep["values"]["cases"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "padichyp", "gammap", "--prime", "7", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["verdict"] == "computed"


@given(rationals().filter(lambda r: r != 0))
def test_serialization_round_trip(x):
    v = padic_from_rational(x, 7, 6)
    d = ser(v)
    assert len(d["digits"]) == d["precision"] - d["valuation"]
    assert padic_from_json(d, 7) == v
