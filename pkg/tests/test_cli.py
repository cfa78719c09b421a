import json
import os
from pathlib import Path

import pytest

from acphase.cli import cmd_verify_algebra, load_scenario, main
from acphase.report import RunReport, SCHEMA_TAG

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture()
def report_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ACPHASE_REPORT_DIR", str(tmp_path))
    return tmp_path


def test_verify_algebra_all_pass_and_record_count():
    report = cmd_verify_algebra()
    assert report.overall == "pass"
    # enumerated suites: 16 Clifford + 64 ring + 4 xi commutators + 2(+6) operator
    # identities + 16 antisymmetry + 64 U b b + 3(+2) correspondence records
    assert len(report.records) >= 16 + 64 + 4 + 2 + 16 + 64 + 3
    assert "component_layout" in report.tables
    assert len(report.tables["component_layout"]) == 10


def test_verify_algebra_defect_injection_fails_ring():
    report = cmd_verify_algebra(inject_ring_defect=True)
    ring_failures = [r for r in report.records if r.name.startswith("ring") and r.status == "fail"]
    assert ring_failures
    assert report.overall == "fail"


def test_cli_exit_codes_and_report_file(report_dir, capsys):
    rc = main(["verify-phase", str(SCENARIOS / "ac_uniform_e_spin1.cfg")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "overall: pass" in out
    stored = report_dir / "last_report.json"
    assert stored.exists()
    payload = json.loads(stored.read_text())
    assert payload["schema"] == SCHEMA_TAG


def test_cli_winding_zero_scenario(report_dir, capsys):
    rc = main(["verify-phase", str(SCENARIOS / "null_winding_zero.cfg")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "loop phase vs closed formula" in out


def test_cli_b_field_scenario_clean_failure(report_dir, tmp_path, capsys):
    # an E_3 component violates the AC preconditions: the run must produce a
    # failure record, not a crash
    bad = tmp_path / "bad_field.cfg"
    bad.write_text("""
[scenario]
name = bad_field
spin = one
s = +1
mu = 0.5
[field]
kind = uniform_e
e1 = 0.0
e2 = 0.5
e3 = 0.4
[loop]
shape = square
center = 0.9 0.2
radius = 0.3
[grid]
x0 = 0.3
y0 = 0.4
n = 9
h = 0.02
[numerics]
tol = 1e-9
""")
    rc = main(["verify-phase", str(bad)])
    assert rc == 1
    out = capsys.readouterr().out
    assert "ansatz preconditions" in out
    assert "fail" in out


def test_cli_invalid_scenario_exit_2(report_dir, tmp_path, capsys):
    broken = tmp_path / "broken.cfg"
    broken.write_text("[scenario]\nname = x\n")  # missing spin and everything else
    rc = main(["verify-phase", str(broken)])
    assert rc == 2
    err = capsys.readouterr().err
    assert "spin" in err

    rc = main(["verify-phase", str(tmp_path / "missing.cfg")])
    assert rc == 2


def test_scenario_key_diagnostics(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("[scenario]\nspin = one\ns = 1\nmu = 0.5\n[field]\nkind = nonsense\n")
    with pytest.raises(ValueError, match="kind"):
        load_scenario(cfg)


def test_json_roundtrip_identity():
    report = cmd_verify_algebra()
    text = report.to_json()
    again = RunReport.from_json(text)
    assert again.to_json() == text


def test_text_report_one_line_per_record():
    report = cmd_verify_algebra()
    lines = report.to_text().strip().splitlines()
    # header (2 lines) + records + overall summary
    assert len(lines) == 2 + len(report.records) + 1


def test_report_determinism_byte_identical():
    a = cmd_verify_algebra().to_json()
    b = cmd_verify_algebra().to_json()
    assert a == b


def test_transport_samples_seeded_and_recorded():
    report = cmd_verify_algebra(seed=123, transport_samples=5)
    samples = [r for r in report.records if r.name.startswith("interaction transport sample")]
    assert len(samples) == 5
    assert all(r.status == "pass" for r in samples)
    assert "seed 123" in samples[0].detail
    # same seed reproduces byte-identically; the sample content is seed-driven
    again = cmd_verify_algebra(seed=123, transport_samples=5)
    assert report.to_json() == again.to_json()


def test_report_subcommand_roundtrip(report_dir, capsys):
    main(["verify-phase", str(SCENARIOS / "ac_uniform_e_spin1.cfg")])
    capsys.readouterr()
    rc = main(["report", "--format", "json", "--out", "-"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == SCHEMA_TAG
    assert payload["overall"] == "pass"


def test_report_unwritable_path(report_dir, capsys):
    main(["verify-phase", str(SCENARIOS / "null_winding_zero.cfg")])
    capsys.readouterr()
    rc = main(["report", "--format", "text", "--out", "/nonexistent-dir/report.txt"])
    assert rc == 2
    assert "/nonexistent-dir/report.txt" in capsys.readouterr().err


def test_report_missing_source(report_dir, capsys):
    rc = main(["report", "--from", str(report_dir / "nope.json"), "--format", "text"])
    assert rc == 2


def test_scenario_overrides(report_dir):
    sc = load_scenario(SCENARIOS / "ac_uniform_e_spin1.cfg",
                       tol_override=1e-7, grid_h_override=0.05, seed_override=9)
    assert sc.tol == 1e-7
    assert sc.grid.h == 0.05
    assert sc.seed == 9


def test_line_charge_scenario_full(report_dir, capsys):
    rc = main(["verify-phase", str(SCENARIOS / "ac_line_charge_spin1.cfg")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "spin-one to spin-half ratio" in out
    assert "overall: pass" in out
    payload = json.loads((report_dir / "last_report.json").read_text())
    by_name = {r["name"]: r for r in payload["records"]}
    loop = by_name["loop phase vs closed formula"]
    assert loop["expected"] == 1.0  # 2 mu lambda s3 for mu = 0.5, lambda = 1
    assert abs(loop["measured"] - 1.0) < 1e-6


def test_line_charge_spinhalf_scenario(report_dir, capsys):
    rc = main(["verify-phase", str(SCENARIOS / "ac_line_charge_spinhalf.cfg")])
    assert rc == 0
    capsys.readouterr()
    payload = json.loads((report_dir / "last_report.json").read_text())
    by_name = {r["name"]: r for r in payload["records"]}
    loop = by_name["loop phase vs closed formula"]
    assert loop["expected"] == 0.5  # mu lambda s for mu = 0.5, lambda = 1
    assert abs(loop["measured"] - 0.5) < 1e-6
    assert payload["overall"] == "pass"
