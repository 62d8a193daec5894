from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

from germinv.cli import main
from germinv.fileformat import parse_table_row

GERMS = Path(__file__).resolve().parent.parent / "germs"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_table_row(capsys):
    code, out, _ = run(capsys, "catalog", "S", "--k", "3", "--table")
    assert code == 0
    row = parse_table_row(out.strip())
    assert (row["C"], row["T"], row["components"], row["vi"], row["L"]) == (
        "3", "0", "1(twisted)", "-3", "3",
    )


def test_catalog_json(capsys):
    code, out, _ = run(capsys, "catalog", "H", "--k", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["vi_sum"] == -7 and doc["vi"] == [-7] and doc["L"] == -1
    assert doc["intersection_matrix"][0][1] == 4


def test_catalog_family_listing(capsys):
    code, out, _ = run(capsys, "catalog", "B")
    assert code == 0
    assert [parse_table_row(r)["name"] for r in out.splitlines()] == [f"B_{k}" for k in range(1, 7)]


def test_catalog_k_guard(capsys):
    code, _, err = run(capsys, "catalog", "S", "--k", "13")
    assert code == 2 and "--allow-large" in err
    code, out, _ = run(capsys, "catalog", "S", "--k", "13", "--allow-large")
    assert code == 0 and "C=13" in out


def test_analyze_immersion(capsys):
    code, out, _ = run(capsys, "analyze", str(GERMS / "immersion.germ"))
    assert code == 0
    row = parse_table_row(out.splitlines()[0])
    assert (row["C"], row["T"], row["L"], row["vi_sum"], row["components"]) == ("0", "0", "0", "0", "0")
    assert "S^3" in out


def test_analyze_json_marar(capsys):
    code, out, _ = run(capsys, "analyze", str(GERMS / "marar.germ"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["C"] == 3 and doc["T"] == 1 and doc["vi_sum"] == -20
    assert doc["twisted"] == [True] * 5


def test_analyze_truncation_flag(capsys):
    code, out, _ = run(capsys, "analyze", str(GERMS / "b2.germ"), "--truncation", "3", "--json")
    assert code == 0
    assert json.loads(out)["vi"] == [-3, -3]
    code, _, _ = run(capsys, "analyze", str(GERMS / "b2.germ"), "--truncation", "0")
    assert code == 1


def test_check_exit_codes(capsys):
    assert run(capsys, "check", str(GERMS / "marar.germ"))[0] == 0
    code, out, _ = run(capsys, "check", str(FIXTURES / "corrupted_vi.germ"))
    assert code == 3
    assert "eq1=False" in out


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.germ"
    bad.write_text('germ "x" {\n  phi = ["s", "t", "1"]\n}\n')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 1 and "bad.germ:2:" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.germ"))
    assert code == 1 and "cannot read" in err
    code, _, _ = run(capsys, "analyze", str(GERMS / "b2.germ"), "--conductor", "0")
    assert code == 1


def test_pipeline_errors_map_to_exit_codes(capsys, tmp_path):
    f = tmp_path / "g.germ"
    f.write_text('germ "corank2" { phi = ["s^2", "t^2", "s^3 + t^3 + s*t"] }')
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1 and "NeedsOverride" in err
    f.write_text('germ "flat" { phi = ["s", "t^2", "0"] }')
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1 and "NotFinitelyDetermined" in err
    f.write_text(
        'germ "cube" { phi = ["s^2", "t^2", "s^3 + t^3 + s*t"] d = "t^3 - 2*s^3 + s^4" T = 1 }'
    )
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2 and "ExtensionUnsupported" in err


def test_failing_record_does_not_hide_the_others(capsys, tmp_path):
    f = tmp_path / "two.germ"
    f.write_text('germ "flat" { phi = ["s", "t^2", "0"] }\ngerm "cc" { phi = ["s", "t^2", "s*t"] }')
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 1
    assert parse_table_row(out.splitlines()[0])["name"] == "cc"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.count("PASS") == 5


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "germinv", "catalog", "B", "--k", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert parse_table_row(proc.stdout.strip())["vi"] == "-4"


def test_usage_errors_are_input_errors(capsys):
    assert main(["catalog", "Z"]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["--help"]) == 0
