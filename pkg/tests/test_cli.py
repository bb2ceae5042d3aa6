"""Oracle tests for the command-line interface.

Most tests invoke ``silt.cli.main`` in-process so that the expensive
enumeration caches are shared with the rest of the suite; a couple of
subprocess smoke tests check the installed entry point end to end.
"""

import json
import subprocess
import sys
from importlib.resources import files

import pytest

import silt.cli as cli
from silt.cli import main
from silt.quivers import parse_quiver
from silt.modules import ar_quiver_mod
from silt.silting import silting_alg2
from silt.classify import classify, dedupe, summary_csv

FIXDIR = files("silt").joinpath("fixtures")


def fx(name: str) -> str:
    return str(FIXDIR / f"{name}.quiver")


def run_cli(capsys, *argv):
    rc = main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


# --- ar command ---

def test_ar_two_term_ascii_a2_has_five_vertices(capsys):
    rc, out, _ = run_cli(capsys, "ar", fx("a2"), "--two-term")
    assert rc == 0
    assert out.count("∘") == 5
    assert "•" not in out


def test_ar_mod_ascii_a2_has_three_vertices(capsys):
    rc, out, _ = run_cli(capsys, "ar", fx("a2"))
    assert rc == 0
    assert out.count("∘") == 3


def test_ar_dot_d4_has_twelve_vertices(capsys):
    rc, out, _ = run_cli(capsys, "ar", fx("d4"), "--format", "dot")
    assert rc == 0
    assert out.startswith("digraph ar {")
    assert out.count("shape=plaintext") == 12


def test_ar_json_a3(capsys):
    rc, out, _ = run_cli(capsys, "ar", fx("a3_linear"), "--format", "json")
    assert rc == 0
    payload = json.loads(out)
    assert payload["two_term"] is False
    assert len(payload["vertices"]) == 6
    assert payload["arrows"]
    assert set(payload["layout"]) == set(payload["vertices"])


def test_ar_csv_a3_row_counts(capsys):
    rc, out, _ = run_cli(capsys, "ar", fx("a3_linear"), "--format", "csv")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,source,target"
    ar = ar_quiver_mod(parse_quiver("vertices 1 2 3\narrow a:1->2\narrow b:2->3\n"))
    kinds = [line.split(",")[0] for line in lines[1:]]
    assert kinds.count("arrow") == len(ar.arrows)
    assert kinds.count("tau") == len(ar.tau_pairs)


# --- input errors and exit codes ---

def test_missing_file_exits_2(capsys):
    rc, _, err = run_cli(capsys, "ar", "/no/such/file.quiver")
    assert rc == 2
    assert "error" in err


def test_bad_syntax_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertices x y\n")
    rc, _, err = run_cli(capsys, "silting", str(bad))
    assert rc == 2
    assert "error" in err


def test_oriented_cycle_exits_3(tmp_path, capsys):
    cyc = tmp_path / "cyc.quiver"
    cyc.write_text("vertices 1 2\narrow a:1->2\narrow b:2->1\n")
    rc, _, err = run_cli(capsys, "silting", str(cyc))
    assert rc == 3


def test_non_dynkin_underlying_graph_exits_3(tmp_path, capsys):
    square = tmp_path / "square.quiver"
    square.write_text(
        "vertices 1 2 3 4\narrow a:1->2\narrow b:2->3\narrow c:3->4\narrow d:1->4\n"
    )
    rc, _, err = run_cli(capsys, "classify", str(square))
    assert rc == 3


def test_bad_jobs_value_exits_2(capsys):
    rc = main(["classify", fx("a2"), "--jobs", "zero"])
    capsys.readouterr()
    assert rc == 2


def test_help_exits_0(capsys):
    rc, out, _ = run_cli(capsys, "--help")
    assert rc == 0
    assert "paper-suite" in out


# --- silting command ---

def test_silting_ascii_a3(capsys):
    rc, out, _ = run_cli(capsys, "silting", fx("a3_linear"))
    assert rc == 0
    assert out.splitlines()[0] == "silting objects: 14"
    assert out.count("#") == 14
    assert out.count("•") == 14 * 3


def test_silting_json_d5_count(capsys):
    rc, out, _ = run_cli(capsys, "silting", fx("d5"), "--format", "json")
    assert rc == 0
    payload = json.loads(out)
    assert payload["count"] == 182
    assert len(payload["objects"]) == 182


def test_tilting_only_json_a3(capsys):
    rc, out, _ = run_cli(
        capsys, "silting", fx("a3_linear"), "--tilting-only", "--format", "json"
    )
    assert rc == 0
    payload = json.loads(out)
    assert payload["count"] == 5
    assert len(payload["modules"]) == 5


def test_silting_csv_a3(capsys):
    rc, out, _ = run_cli(capsys, "silting", fx("a3_linear"), "--format", "csv")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,shifted,modules"
    assert len(lines) == 1 + 14


def test_silting_oracle_a4_passes(capsys):
    rc, out, _ = run_cli(capsys, "silting", fx("a4_linear"), "--oracle")
    assert rc == 0
    assert out.splitlines()[0] == "silting objects: 42"


def test_silting_dot_unsupported_exits_2(capsys):
    rc, _, err = run_cli(capsys, "silting", fx("a2"), "--format", "dot")
    assert rc == 2
    assert "format" in err


def test_oracle_mismatch_exits_1(monkeypatch, capsys):
    monkeypatch.setattr(cli, "silting_bruteforce", lambda q: ())
    rc, _, err = run_cli(capsys, "silting", fx("a2"), "--oracle")
    assert rc == 1
    assert "oracle" in err


def test_bundled_fixture_resolved_by_name(capsys):
    rc, out, _ = run_cli(capsys, "silting", "a2", "--format", "json")
    assert rc == 0
    assert json.loads(out)["count"] == 5


# --- classify command ---

def test_classify_csv_matches_library(capsys):
    rc, out, _ = run_cli(capsys, "classify", fx("a3_linear"), "--format", "csv")
    assert rc == 0
    q = parse_quiver("vertices 1 2 3\narrow a:1->2\narrow b:2->3\n")
    groups = dedupe([classify(q, t) for t in silting_alg2(q)])
    assert out == summary_csv(groups)
    assert len(out.strip().splitlines()) == 1 + 5


def test_classify_ascii_a3_alt(capsys):
    rc, out, _ = run_cli(capsys, "classify", fx("a3_alt"))
    assert rc == 0
    assert "objects: 14" in out
    assert "classes: 6" in out
    assert "strictly shod: 0" in out
    assert "families:" in out


def test_classify_json_a2(capsys):
    rc, out, _ = run_cli(capsys, "classify", fx("a2"), "--format", "json")
    assert rc == 0
    payload = json.loads(out)
    assert payload["count"] == 5
    assert payload["class_count"] == 2
    assert payload["families"] == {"A1⊔A1": 1, "A2": 1}
    assert len(payload["records"]) == 5


def test_classify_jobs_output_identical(capsys):
    rc1, out1, _ = run_cli(capsys, "classify", fx("a3_alt"), "--jobs", "1")
    rc2, out2, _ = run_cli(capsys, "classify", fx("a3_alt"), "--jobs", "2")
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_repeat_runs_byte_identical(capsys):
    rc1, out1, _ = run_cli(capsys, "classify", fx("a3_linear"), "--format", "csv")
    rc2, out2, _ = run_cli(capsys, "classify", fx("a3_linear"), "--format", "csv")
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_out_writes_file_and_keeps_stdout_quiet(tmp_path, capsys):
    rc1, out1, _ = run_cli(capsys, "silting", fx("a2"), "--format", "json")
    target = tmp_path / "report.json"
    rc2, out2, _ = run_cli(
        capsys, "silting", fx("a2"), "--format", "json", "--out", str(target)
    )
    assert rc1 == rc2 == 0
    assert out2 == ""
    assert target.read_text(encoding="utf-8") == out1


# --- paper-suite command ---

def test_paper_suite_all_rows_pass(capsys):
    rc, out, _ = run_cli(capsys, "paper-suite")
    assert rc == 0
    assert "result:" in out
    assert "FAIL" not in out


def test_paper_suite_csv(capsys):
    rc, out, _ = run_cli(capsys, "paper-suite", "--format", "csv")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "criterion,check,expected,computed,status"
    assert all(line.endswith(",pass") for line in lines[1:])


def test_paper_suite_detects_mismatch(monkeypatch, capsys):
    monkeypatch.setitem(cli.EXPECTED_SILTING, "a2", 99)
    rc, out, _ = run_cli(capsys, "paper-suite")
    assert rc == 1
    assert "FAIL" in out


# --- subprocess smoke tests ---

def test_module_invocation_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "silt.cli", "silting", fx("a2"), "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 5


def test_subprocess_missing_file_exits_2():
    proc = subprocess.run(
        [sys.executable, "-m", "silt.cli", "ar", "/no/such/file.quiver"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
