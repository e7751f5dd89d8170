import json
from pathlib import Path

import pytest

from primform.cli import main
from primform.reports import render, to_json

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(argv, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(argv + ["--json", str(out)])
    stdout = capsys.readouterr().out
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report, stdout, out


def test_verify_cp1(tmp_path, capsys):
    code, report, stdout, _ = run(["verify", "cp1"], tmp_path, capsys)
    assert code == 0
    assert report["verification"]["passed"] == 5
    assert report["verification"]["r"] == "0"


def test_ring_from_spec(tmp_path, capsys):
    code, report, _, _ = run(["ring", "--spec", str(SPECS / "a2.json")], tmp_path, capsys)
    assert code == 0
    assert report["ring"]["mu"] == 2 and report["ring"]["basis"] == ["1", "z"]


def test_bad_form_exits_one(tmp_path, capsys):
    code, report, stdout, _ = run(["verify", "--spec", str(SPECS / "cp1_bad_zeta.json")], tmp_path, capsys)
    assert code == 1
    assert report["verification"]["conditions"]["homogeneity"]["witness"]
    assert "homogeneity.witness" in stdout


@pytest.mark.parametrize(
    "argv",
    [
        ["verify"],
        ["verify", "cp1", "--spec", "x.json"],
        ["verify", "nosuch"],
        ["frobnicate", "cp1"],
        ["descendants", "cp1", "--max-level", "-1"],
        ["mirror-compare", "a2"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_malformed_spec_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "laurent",\n "variables": ["z"],\n "superpotential": [{"coeff": "x"}]}')
    assert main(["ring", "--spec", str(bad)]) == 2
    assert "superpotential[0].coeff" in capsys.readouterr().err


def test_math_failure_exit_one(tmp_path, capsys):
    spec = tmp_path / "cusp.json"
    spec.write_text(json.dumps({
        "kind": "polynomial",
        "variables": [{"name": "x", "weight": "1/2"}, {"name": "y", "weight": "1/2"}],
        "superpotential": [{"exponents": {"x": 2, "y": 0}}],
    }))
    assert main(["ring", "--spec", str(spec)]) == 1


@pytest.mark.parametrize("cmd", ["ring", "frobenius", "verify", "descendants", "mirror-compare"])
def test_json_round_trip_and_stdout_agree(cmd, tmp_path, capsys):
    code, report, stdout, path = run([cmd, "cp1", "--max-insertions", "4", "--max-level", "2"], tmp_path, capsys)
    assert code == 0
    text = path.read_text()
    assert to_json(json.loads(text)) == text
    assert stdout.strip() == "\n".join(render(report))


def test_frobenius_report_notes_normalization(tmp_path, capsys):
    _, report, _, _ = run(["frobenius", "cp1"], tmp_path, capsys)
    fr = report["frobenius"]
    assert fr["potential"] == "1/2*t0^2*t1 + E1*q"
    assert "twice" in fr["potential_note"]
    assert fr["euler"] == "(t0)*d/dt0 + (2)*d/dt1"


def test_mirror_compare_corrupt(tmp_path, capsys):
    code, report, _, _ = run(["mirror-compare", "cp1", "--corrupt", "--max-insertions", "3",
                              "--max-level", "0", "--max-degree", "1"], tmp_path, capsys)
    assert code == 1 and report["comparison"]["max_discrepancy"] != "0"


def test_descendants_a3(tmp_path, capsys):
    code, report, _, _ = run(["descendants", "a3", "--max-insertions", "4", "--max-level", "2"], tmp_path, capsys)
    assert code == 0 and "a_side" not in report["correlators"]
