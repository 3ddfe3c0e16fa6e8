"""命令行: 子命令输出格式与退出码"""

import csv
import io
import json
import math

import pytest

from run.adscausal_cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, dispatch, parse_command
from schema.command import Subcommand


def _run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ==================== 解析 ====================
def test_parse_command_defaults():
    cmd = parse_command(["scan-circle", "--n", "3"])
    assert cmd.subcommand is Subcommand.SCAN_CIRCLE
    assert cmd.samples == 64
    assert cmd.w2 == 0.5
    assert cmd.format is None


def test_parse_point_json():
    cmd = parse_command(["classify", "--n", "3", "--point", '{"nu": {"pp": 0.5, "zp": [0.1]}, "x": 7.0}'])
    assert cmd.point.nu.pp == 0.5
    assert cmd.point.x == pytest.approx(7.0 - 2 * math.pi)


# ==================== 子命令 ====================
def test_table_json(capsys):
    code, out, _ = _run(capsys, "table", "--n", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["n"] == 2
    assert len(data["labels"]) == 6
    assert "b_basis" in data


def test_verify_small(capsys):
    code, out, _ = _run(capsys, "verify", "--n", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["summary"]["passed"] is True
    assert {c["suite"] for c in data["checks"]} == {"structure", "reductive"}


def test_verify_csv(capsys):
    code, out, _ = _run(capsys, "verify", "--n", "2", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["suite", "name", "n", "passed", "counterexample"]
    assert all(row[3] == "true" for row in rows[1:])


def test_classify_identity_is_singular(capsys):
    code, out, _ = _run(capsys, "classify", "--n", "3", "--grid", "33")
    assert code == EXIT_OK
    data = json.loads(out)
    assert set(data) == {"class", "c", "witness_w2", "branch", "type"}
    assert data["class"] == "singular"
    assert data["branch"] == "AN"


def test_classify_free_point(capsys):
    point = json.dumps({"x": 3 * math.pi / 4})
    code, out, _ = _run(capsys, "classify", "--n", "2", "--grid", "33", "--point", point)
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["class"] == "free"
    assert data["witness_w2"] == pytest.approx(0.0)


def test_classify_point_from_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"x": math.pi / 4}), encoding="utf-8")
    code, out, _ = _run(capsys, "classify", "--n", "2", "--grid", "33", "--point", f"@{path}")
    assert code == EXIT_OK
    assert json.loads(out)["class"] == "black_hole"


def test_scan_circle_csv(capsys):
    code, out, _ = _run(capsys, "scan-circle", "--n", "2", "--samples", "4", "--grid", "33")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "class", "s_plus", "s_minus", "c"]
    assert [row[1] for row in rows[1:]] == ["singular", "free", "singular", "free"]
    quarter = rows[2]
    assert float(quarter[2]) == pytest.approx(-2.0)
    assert float(quarter[3]) == pytest.approx(2.0)


def test_scan_circle_json(capsys):
    code, out, _ = _run(capsys, "scan-circle", "--n", "2", "--samples", "2", "--grid", "33", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)
    assert len(rows) == 2
    assert rows[0]["kind"] == "singular"


def test_curve_csv(capsys):
    point = json.dumps({"nu": {"pp": 0.7}})
    code, out, _ = _run(capsys, "curve", "--n", "3", "--samples", "8", "--point", point)
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "n_p"]
    assert len(rows) == 9
    assert float(rows[1][1]) == pytest.approx(0.0, abs=1e-15)


def test_curve_json_has_angles(capsys):
    point = json.dumps({"nu": {"pp": 0.7}})
    code, out, _ = _run(capsys, "curve", "--n", "3", "--samples", "4", "--point", point, "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["angles"]["type"] == "II"
    assert len(data["angles"]["angles"]) == 4
    assert len(data["curve"]) == 4


def test_horizon_json(capsys):
    code, out, _ = _run(capsys, "horizon", "--n", "2", "--tol", "1e-6", "--grid", "33")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["t_star"] == pytest.approx(math.pi / 2, abs=1e-6)
    assert data["lo_class"] == "black_hole"


def test_output_file(capsys, tmp_path):
    target = tmp_path / "table.json"
    code, out, _ = _run(capsys, "table", "--n", "2", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["n"] == 2


# ==================== 退出码 ====================
@pytest.mark.parametrize(
    "argv",
    [
        ["table"],
        ["table", "--n", "1"],
        ["table", "--n", "99"],
        ["table", "--n", "2", "--format", "csv"],
        ["table", "--n", "2", "--format", "xml"],
        ["classify", "--n", "3", "--point", "{not json"],
        ["classify", "--n", "3", "--point", '{"nu": {"zp": [1.0, 2.0]}}'],
        ["scan-circle", "--n", "2", "--w2", "1.5"],
        ["classify", "--n", "2", "--grid", "32"],
        ["frobnicate", "--n", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, _ = _run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_no_crossing_is_a_failure(capsys):
    code, out, err = _run(capsys, "horizon", "--n", "2", "--lo", "0.7", "--hi", "0.8", "--grid", "33")
    assert code == EXIT_FAILED
    assert out == ""
    assert err


def test_help_exits_cleanly(capsys):
    assert dispatch(["--help"]) == EXIT_OK
