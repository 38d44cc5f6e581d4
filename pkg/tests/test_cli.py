import json
import subprocess
import sys

import pytest

from curvechow import chow
from curvechow.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def run_json(capsys, *argv):
    status, out, _ = run(capsys, *argv)
    return status, json.loads(out)


def test_intersect_poly(capsys):
    status, out = run_json(capsys, "intersect", "--n", "3", "--expr", "integrate(delta * H^(n-1))")
    assert status == 0
    assert out["n"] == 3
    assert out["expr"] == "integrate(delta * H^(n-1))"
    assert out["result"]["kind"] == "poly"
    assert out["result"]["text"] == "12"
    assert out["result"]["terms"] == [{"g": 0, "d": 0, "r": 0, "coeff": "12"}]


def test_intersect_symbolic_then_evaluated(capsys):
    expr = "integrate(delta^2 * H^(n-2))"
    _, sym = run_json(capsys, "intersect", "--n", "3", "--expr", expr)
    assert sym["result"]["text"] == "-6*g + 24"
    _, num = run_json(capsys, "intersect", "--n", "3", "--expr", expr, "--g", "2")
    assert num["result"]["text"] == "12"


def test_intersect_class(capsys):
    _, out = run_json(capsys, "intersect", "--n", "2", "--expr", "D(1,2)^2")
    assert out["result"]["kind"] == "class"
    assert out["result"]["text"] == "(-2*g + 2) · [{1}* {2}*]"
    [term] = out["result"]["terms"]
    assert term["config"] == "[{1}* {2}*]"
    assert term["blocks"] == [{"elements": [1], "pinned": True}, {"elements": [2], "pinned": True}]
    assert term["coeff"] == "-2*g + 2"


def test_discriminant_modes(capsys):
    _, engine = run_json(capsys, "discriminant", "--n", "2")
    _, closed = run_json(capsys, "discriminant", "--n", "2", "--mode", "closed")
    assert engine["result"]["text"] == closed["result"]["text"] == "d^2 + (g - 1)*r^2"


def test_discriminant_numeric(capsys):
    _, out = run_json(capsys, "discriminant", "--n", "3", "--g", "0", "--r", "1", "--d", "0")
    assert out["result"]["text"] == "-2"


def test_discriminant_rejects_nonpositive_rank(capsys):
    status, _, err = run(capsys, "discriminant", "--n", "3", "--r", "0")
    assert status == 2 and "rank" in err


def test_stability(capsys):
    _, out = run_json(capsys, "stability", "--n", "5", "--g", "2", "--mu", "1/2")
    assert out["result"]["kind"] == "verdict"
    assert out["result"]["terms"]["verdict"] == "unknown"
    assert out["gap"] is None
    _, out = run_json(capsys, "stability", "--n", "10", "--g", "0", "--mu", "3/2")
    assert out["result"]["terms"]["verdict"] == "section-unstable"
    assert out["gap"]["kind"] == "interval"
    assert out["gap"]["terms"]["lo"] == "-1" and out["gap"]["terms"]["hi"] == "9"


def test_moduli_dim(capsys):
    _, out = run_json(capsys, "moduli-dim", "--g", "2", "--r", "1", "--d", "10")
    assert out["result"]["text"] == "101"
    assert out["chi"] == "0"


def test_text_format(capsys):
    status, out, _ = run(capsys, "discriminant", "--n", "4", "--format", "text")
    assert status == 0
    assert out.strip() == "d^2 - 2*d*r + (3*g - 3)*r^2"


def test_verify(capsys, tmp_path):
    target = tmp_path / "report.json"
    status, out = run_json(capsys, "verify", "--max-n", "2", "--out", str(target))
    assert status == 0
    assert out["passed"] is True
    assert json.loads(target.read_text()) == out
    rows = {row["family"]: row for row in out["rows"]}
    assert rows["discriminant"]["computed"] == "d^2 + (g - 1)*r^2"


def test_verify_rows_per_family(capsys):
    _, out = run_json(capsys, "verify", "--max-n", "5")
    assert out["passed"]
    families = {}
    for row in out["rows"]:
        families.setdefault(row["family"], []).append(row["n"])
    assert families["discriminant"] == [2, 3, 4, 5]
    assert families["projection formula"] == [3, 4, 5]


def test_verify_failure_exit_status(capsys, monkeypatch):
    from curvechow import verify
    monkeypatch.setattr(verify, "discriminant_closed", lambda n: verify.RatPoly.const(0))
    status, out = run_json(capsys, "verify", "--max-n", "2")
    assert status == 1
    assert out["passed"] is False


@pytest.mark.parametrize("argv", [
    ["verify", "--max-n", "1"],
    ["verify", "--max-n", "13"],
    ["intersect", "--n", "3", "--expr", "H^"],
    ["intersect", "--n", "3", "--expr", "P(4)"],
    ["intersect", "--n", "2", "--expr", "H^(n-3)"],
])
def test_usage_errors_exit_2(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 2
    assert err.startswith("error:")


def test_parse_error_points_at_offset(capsys):
    _, _, err = run(capsys, "intersect", "--n", "3", "--expr", "H^")
    assert "offset 2" in err
    assert err.rstrip().endswith("^")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["stability", "--n", "3", "--g", "1", "--mu", "x/y"])
    assert info.value.code == 2


def test_max_ambient_override(capsys, monkeypatch):
    monkeypatch.setattr(chow.config, "max_n", 12)
    status, _, _ = run(capsys, "intersect", "--n", "4", "--expr", "H", "--max-ambient", "3")
    assert status == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "curvechow", "moduli-dim", "--g", "0", "--r", "1", "--d", "5",
         "--format", "text"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["21", "chi(O): 1"]
