import json
import subprocess
import sys

import pytest

from torsam.cli import main

DOUBLE_LINE = "ring R = k[x,y] / (x^2)\nmodule M over R = coker deg(0) [[x]]\n"


@pytest.fixture
def infile(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text(DOUBLE_LINE)
    return str(path)


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_parse(infile, capsys):
    assert main(["parse", infile, "--no-timestamp"]) == 0
    out = _json(capsys)
    assert out["rings"][0]["vars"] == ["x", "y"] and "generated_at" not in out
    assert main(["parse", infile, "--format", "text"]) == 0
    assert "ring R" in capsys.readouterr().out


def test_timestamp_is_separate_field(infile, capsys):
    assert main(["parse", infile]) == 0
    out = _json(capsys)
    assert "generated_at" in out
    assert "generated_at" not in out["normalized"]


def test_resolve_and_invariants(infile, capsys):
    assert main(["resolve", infile, "--i-max", "3", "--no-timestamp"]) == 0
    out = _json(capsys)
    assert out["module"] == "M" and "hilbert_series" in out
    assert main(["invariants", infile, "--n-max", "6", "--no-timestamp"]) == 0
    rep = _json(capsys)["report"]
    assert rep["multiplicity"] == 1


def test_tor_table_formats(infile, capsys):
    assert main(["tor-table", infile, "--n-max", "4", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "i,n,length" and len(lines) == 6
    assert main(["tor-table", infile, "--n-max", "4", "--no-timestamp"]) == 0
    assert "table" in _json(capsys)


def test_fit(infile, capsys):
    assert main(["fit", "--values", "1,3,5,7,9", "--no-timestamp"]) == 0
    assert _json(capsys)["fit"]["degree"] == 1
    assert main(["fit", infile, "--n-max", "6", "--no-timestamp"]) == 0
    assert _json(capsys)["fits"]["1"]["degree"] == 0
    assert main(["fit", "--values", "1,2,4,8,16"]) == 2


def test_construct(capsys, tmp_path):
    assert main(["construct", "noncm", "--p", "0", "--q", "2", "--format", "text"]) == 0
    assert "ring" in capsys.readouterr().out
    assert main(["construct", "hypersurface", "--form", "x^2 + x*y", "--format", "text"]) == 0
    assert "x^2" in capsys.readouterr().out
    src = tmp_path / "s.txt"
    src.write_text("ring S = k[x1,x2]\nmodule L over S = coker deg(0) [[x2]]\n")
    assert main(["construct", "trivext", str(src), "--format", "text"]) == 0
    assert "y" in capsys.readouterr().out
    assert main(["construct", "hypersurface"]) == 3


def test_fuzz_is_seeded(capsys):
    assert main(["fuzz", "--seed", "3", "--trials", "4", "--no-timestamp"]) == 0
    a = capsys.readouterr().out
    assert main(["fuzz", "--seed", "3", "--trials", "4", "--no-timestamp"]) == 0
    assert capsys.readouterr().out == a
    assert main(["fuzz", "--shapes", "nonsense"]) == 3


def test_verify_exit_codes(capsys, tmp_path):
    assert main(["verify", "mprimary-vanishing", "--n-max", "4", "--no-timestamp"]) == 0
    assert _json(capsys)["summary"]["fails"] == 0
    # one literal claim of the recursion scenario fails
    out = tmp_path / "rec.json"
    assert main(["verify", "recursion", "--n-max", "6", "--out", str(out)]) == 1
    rep = json.loads(out.read_text())
    assert rep["summary"]["fails"] == 1


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("ring R = k[x,y\n")
    assert main(["parse", str(bad)]) == 3
    assert main(["parse", str(tmp_path / "missing.txt")]) == 3
    assert main(["verify", "no-such-scenario"]) == 3
    assert main(["verify"]) == 3
    assert main(["fuzz", "--field", "32004"]) == 3
    assert main(["bogus-verb"]) == 3
    capsys.readouterr()


def test_config_replay(tmp_path, capsys):
    first = tmp_path / "a.json"
    assert main(["verify", "noncm", "--p", "0", "--q", "2", "--n-max", "6", "--no-timestamp",
                 "--out", str(first)]) == 0
    second = tmp_path / "b.json"
    assert main(["verify", "--config", str(first), "--no-timestamp", "--out", str(second)]) == 0
    assert first.read_text() == second.read_text()


def test_console_script_entry(infile):
    proc = subprocess.run([sys.executable, "-m", "torsam.cli", "parse", infile, "--no-timestamp"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["field"] > 0
