from __future__ import annotations

import csv
import json
import subprocess
import sys

import pytest

from mhcq.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main

from conftest import DATA

STRUCT = DATA / "structures"
INST = DATA / "instances"


def _run(tmp_path, *argv, name="out"):
    out = tmp_path / f"{name}.json"
    code = main([*argv, "--report", str(out), "--quiet"])
    return code, out


def test_verify_writes_json_tsv_png(tmp_path):
    code, out = _run(tmp_path, "verify", "--structure", str(STRUCT / "z2_group.json"))
    assert code == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "regular" and rep["command"] == "verify"
    assert rep["inputs"]["structure"]["sha256"]
    assert "timing" not in rep
    rows = list(csv.reader(out.with_suffix(".tsv").open(), delimiter="\t"))
    assert rows[0] == ["group", "check", "status", "checked", "failures", "window", "witness", "lhs", "rhs"]
    assert len(rows) > 10
    assert out.with_suffix(".png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_timing_is_opt_in(tmp_path):
    out = tmp_path / "t.json"
    assert main(["verify", "--structure", str(STRUCT / "z2_group.json"), "--report", str(out),
                 "--quiet", "--timing"]) == EXIT_OK
    assert "seconds" in json.loads(out.read_text())["timing"]


def test_expectation_mismatch(tmp_path):
    code, _ = _run(tmp_path, "verify", "--structure", str(STRUCT / "s3_group.json"), "--expect", "generalized")
    assert code == EXIT_MISMATCH


def test_non_ip_loop(tmp_path):
    code, out = _run(tmp_path, "verify", "--structure", str(STRUCT / "l5_non_ip.json"))
    rep = json.loads(out.read_text())
    assert code == EXIT_MISMATCH and rep["verdict"] == "no"
    failing = [c for c in rep["checks"] if c["status"] == "FAIL"]
    assert failing and all(c["witness"] for c in failing)
    code, _ = _run(tmp_path, "verify", "--structure", str(STRUCT / "l5_non_ip.json"), "--expect", "no", name="b")
    assert code == EXIT_OK


def test_l10_report_carries_coassociativity_witness(tmp_path):
    code, out = _run(tmp_path, "verify", "--structure", str(STRUCT / "l10.json"))
    rep = json.loads(out.read_text())
    assert code == EXIT_OK and rep["coassociative"] is False
    co = next(c for c in rep["checks"] if c["name"] == "coassociativity")
    assert co["witness"] and co["lhs"] != co["rhs"]


@pytest.mark.parametrize("content", ["{not json", '{"algebra": "bogus", "loop": "group:Z2"}',
                                     '{"loop": "group:Q8"}', '{"loop": "table:missing.loop"}',
                                     '{"format": "other/2"}', '{"scalars": "reals", "loop": "group:Z2"}'])
def test_bad_structure_files(tmp_path, content, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(content)
    code, _ = _run(tmp_path, "verify", "--structure", str(bad))
    assert code == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_non_latin_table_rejected(tmp_path):
    (tmp_path / "bad.loop").write_text("2\n0\n0 1\n1 1\n")
    (tmp_path / "s.json").write_text('{"loop": "table:bad.loop"}')
    code, _ = _run(tmp_path, "verify", "--structure", str(tmp_path / "s.json"))
    assert code == EXIT_INPUT


def test_missing_structure_file(tmp_path):
    code, _ = _run(tmp_path, "verify", "--structure", str(tmp_path / "nope.json"))
    assert code == EXIT_INPUT


def test_infinite_structure_needs_window(tmp_path):
    code, _ = _run(tmp_path, "verify", "--structure", str(STRUCT / "l10xz.json"), "--window", "0")
    assert code == EXIT_INPUT


def test_bad_worker_count(tmp_path):
    code, _ = _run(tmp_path, "verify", "--structure", str(STRUCT / "z2_group.json"), "--workers", "0")
    assert code == EXIT_INPUT


def test_classify_small(tmp_path):
    code, out = _run(tmp_path, "classify", "--max-order", "4")
    rep = json.loads(out.read_text())
    assert code == EXIT_OK
    assert rep["counts"]["4"]["loops"] == 2 and rep["discrepancies"] == 0
    assert out.with_suffix(".png").exists()


def test_classify_bound(tmp_path):
    code, _ = _run(tmp_path, "classify", "--max-order", "7")
    assert code == EXIT_INPUT


def test_ydq_exit_codes(tmp_path):
    assert _run(tmp_path, "ydq", "--instance", str(INST / "z2_trivial.json"), name="a")[0] == EXIT_OK
    code, out = _run(tmp_path, "ydq", "--instance", str(INST / "s3_functions_diagonal.json"), name="b")
    rep = json.loads(out.read_text())
    assert code == EXIT_MISMATCH and rep["verdict"] == "fail"
    assert any(c["status"] == "n/a" for c in rep["checks"])
    code, _ = _run(tmp_path, "ydq", "--instance", str(INST / "s3_functions_diagonal.json"),
                   "--expect", "fail", name="c")
    assert code == EXIT_OK


def test_ydq_needs_regular_structure(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"structure": str(STRUCT / "l5_non_ip.json"), "module": "trivial"}))
    code, _ = _run(tmp_path, "ydq", "--instance", str(inst))
    assert code == EXIT_INPUT


def test_ydq_rejects_infinite_structure(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"structure": str(STRUCT / "l10xz.json")}))
    code, _ = _run(tmp_path, "ydq", "--instance", str(inst))
    assert code == EXIT_INPUT


def test_console_script_version():
    out = subprocess.run([sys.executable, "-m", "mhcq.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("mhcq ")
