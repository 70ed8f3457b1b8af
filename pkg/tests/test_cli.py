import io
import json
import subprocess
import sys

import pytest

from cevian_locus.cli import main
from cevian_locus.field import parse_scalar, format_scalar


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stream=buf)
    return code, json.loads(buf.getvalue()), buf.getvalue()


def all_literals(obj):
    if isinstance(obj, str):
        yield obj
    elif isinstance(obj, list):
        for x in obj:
            yield from all_literals(x)
    elif isinstance(obj, dict):
        for v in obj.values():
            yield from all_literals(v)


def test_verify_half_turn():
    code, rep, _ = run("verify", "-p", "-4+1*sqrt(19),-1,3", "--sqrt", "19")
    assert code == 0
    assert rep["classification"]["kind"] == "HalfTurn"
    assert all(c["value"] for c in rep["conditions"])
    assert all(c["value"] for c in rep["extras"])
    assert rep["ratios"] == {"GS/SV": "5/3", "ZG/GV": "5/4"}
    for p in rep["points"].values():
        for lit in p:
            assert format_scalar(parse_scalar(lit)) == lit


def test_verify_non_half_turn():
    code, rep, _ = run("verify", "-p", "1,2,4")
    assert code == 0
    assert rep["classification"]["kind"] == "Homothety"
    assert not any(c["value"] for c in rep["conditions"])


def test_verify_point_with_caveat():
    code, rep, _ = run("verify", "-p", "1,2,3")
    assert code == 0
    assert rep["caveats"] == ["h_prime_at_vertex"]
    assert rep["classification"] == {"kind": "Homothety", "ratio": "-2/5", "center": ["25", "32", "27"]}


@pytest.mark.parametrize("point, kind", [("1,1,1", "HypothesisViolated"), ("0,1,2", "PointOnSideline"), ("1,2", "InputError")])
def test_verify_input_errors(point, kind):
    code, rep, _ = run("verify", "-p", point)
    assert code == 2
    assert rep["error"]["type"] == kind


def test_verify_field_mismatch():
    code, rep, _ = run("verify", "-p", "-4+1*sqrt(19),-1,3", "--sqrt", "5")
    assert code == 2


def test_reports_are_deterministic():
    _, _, a = run("verify", "-p", "-4+1*sqrt(19),-1,3")
    _, _, b = run("verify", "-p", "-4+1*sqrt(19),-1,3")
    assert a == b
    assert "seconds" not in a


def test_timing_flag():
    _, rep, _ = run("--timing", "curve", "j")
    assert isinstance(rep["seconds"], float)


def test_approx_annotation():
    _, rep, _ = run("verify", "-p", "-4+1*sqrt(19),-1,3", "--approx")
    assert rep["approx"]["P"][1].startswith("-8.358898943540673552")


def test_curve_commands():
    code, rep, _ = run("curve", "torsion")
    assert [row["order"] for row in rep["table"]] == [1, 2, 3, 3, 6, 6]
    _, rep, _ = run("curve", "add", "-p", "0,1,0", "-q", "0,1,0")
    assert rep["sum"] == ["1", "-1", "0"]
    _, rep, _ = run("curve", "j")
    assert rep["j"] == "21296/25"
    _, rep, _ = run("curve", "map", "--uv", "2,2*sqrt(6)")
    assert rep["on_curve"] and rep["round_trip"]
    _, rep, _ = run("curve", "map", "-p", "0,0,1")
    assert rep["uv"] == ["0", "2"] and rep["round_trip"]
    _, rep, _ = run("curve", "member", "-p", "1,2,3")
    assert rep["member"] is False and rep["residual"] == "36"
    _, rep, _ = run("curve", "order", "-p", "0,1,0")
    assert rep["order"] == 6


def test_curve_rejects_non_members():
    code, rep, _ = run("curve", "add", "-p", "1,2,3", "-q", "0,1,0")
    assert code == 2
    code, _, _ = run("curve", "map", "--uv", "1,1")
    assert code == 2
    code, _, _ = run("curve", "add", "-p", "0,1,0")
    assert code == 2


def test_trace(tmp_path):
    out, fig = tmp_path / "pts.jsonl", tmp_path / "locus.svg"
    code, rep, _ = run("trace", "-n", "3", "-o", str(out), "--svg", str(fig))
    assert code == 0 and rep["samples"] == 3 and rep["all_members"]
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    for line in lines:
        rec = json.loads(line)
        assert rec["member"]
        for lit in all_literals([rec["P"], rec["P_prime"], rec["triangle"]]):
            assert format_scalar(parse_scalar(lit)) == lit
    svg = fig.read_text()
    assert svg.startswith("<?xml") and "<svg" in svg and svg.count("<circle") >= 3


def test_trace_single_and_zero():
    code, rep, _ = run("trace", "-n", "1")
    assert code == 0 and "P_swapped" in rep["records"][0]
    code, rep, _ = run("trace", "-n", "0")
    assert code == 2


def test_scene(tmp_path):
    fig = tmp_path / "scene.svg"
    code, rep, _ = run("scene", "--svg", str(fig))
    assert code == 0
    assert all(c["value"] for c in rep["checks"])
    assert rep["ratios"]["ZG/GV"] == "5/4"
    svg = fig.read_text()
    assert svg.count("<circle") == 9
    for name in ("P1", "Q1", "Q1'", "P1'", "O1", "S1", "G1", "V1", "Z1"):
        assert f">{name}<" in svg.replace("&apos;", "'")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "cevian_locus.cli", "curve", "j"], capture_output=True, text=True
    )
    assert res.returncode == 0 and json.loads(res.stdout)["j"] == "21296/25"
