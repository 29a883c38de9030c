import json

import pytest

from sofa.cli import EXIT_OK, EXIT_USAGE, dumps, run
from sofa.reference import AMBI_AREA, AMBI_LENGTH, AMBI_TABLE


def test_ambi_json(tmp_path, capsys):
    out = tmp_path / "ambi.json"
    assert run(["ambi", "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["constants"]["beta"] == pytest.approx(AMBI_TABLE["beta"], rel=1e-15)
    assert abs(data["metrics"]["area_delta"] - AMBI_AREA) <= 1e-11
    assert abs(data["metrics"]["length_lambda"] - AMBI_LENGTH) <= 1e-12
    table = capsys.readouterr().out
    assert "beta" in table and "FAIL" not in table


def test_json_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["gerver", "--out", str(a)])
    run(["gerver", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_hammersley_area(capsys):
    assert run(["hammersley", "--r", "0.6366197724"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["area_analytic"] == pytest.approx(2.207416, abs=1e-6)


def test_hammersley_build(capsys):
    assert run(["hammersley", "--n-angles", "256"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert abs(data["area_boundary"] - data["area_analytic"]) <= 1e-9


def test_gerver_classic(capsys):
    assert run(["gerver-classic"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["angle_gap_vs_solver"] <= 1e-10


def test_verify_single_segment(capsys):
    assert run(["verify", "--segment", "sigma9"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] and len(data["checks"]) == 1


@pytest.mark.parametrize("argv", [
    ["bogus"], ["ambi", "--tol", "1"], ["ambi", "--tol", "1e-20"], ["ambi", "--n-angles", "4"],
    ["ambi", "--n-angles", "100000"], ["ambi", "--format", "pdf"], ["hammersley", "--r", "2"],
    ["verify", "--segment", "sigma6"], ["frames"], ["render", "square"],
])
def test_usage_errors(argv, capsys):
    code = None
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("fmt, marker", [("svg", "<svg"), ("csv", "x,y")])
def test_render_formats(tmp_path, fmt, marker):
    out = tmp_path / f"s.{fmt}"
    assert run(["render", "hammersley", "--format", fmt, "--n-angles", "64", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8").startswith(marker)


def test_frames(tmp_path):
    assert run(["frames", "hammersley", "--frames", "3", "--out", str(tmp_path / "f")]) == 0
    assert len(list((tmp_path / "f").glob("frame_*.svg"))) == 3


def test_dumps_precision():
    text = dumps({"x": 0.1, "n": 3, "ok": True, "v": [1.0, float("nan")]})
    assert '"x": 0.10000000000000001' in text
    assert json.loads(text)["x"] == 0.1
