"""Command-line front end: algebra suites, scenario-driven phase verification.

Scenario files are flat INI text (configparser syntax).  Reports are written
to the directory named by ACPHASE_REPORT_DIR (default: current directory) as
last_report.json, and can be re-serialized with the report subcommand.

Exit codes: 0 all checks pass, 1 at least one failure, 2 configuration or
I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import dirac as dirac_mod
from . import kemmer as kemmer_mod
from . import proca as proca_mod
from .exact import ExactMatrix, GaussianRational, anticommutator, commutator
from .fields import FieldConfig, LoopPath
from .phase import (
    GridSpec,
    PhaseAnsatz,
    measured_loop_phase,
    predicted_phase,
    spin_ratio_experiment,
    verify_ansatz_dirac,
    verify_ansatz_kemmer,
    verify_ansatz_proca,
)
from .report import RunReport

REPORT_DIR_ENV = "ACPHASE_REPORT_DIR"
LAST_REPORT = "last_report.json"


def _report_dir() -> Path:
    return Path(os.environ.get(REPORT_DIR_ENV, "."))


def rational_stream(seed: int):
    """Deterministic stream of small exact rationals for reproducible samples.

    A fixed 31-bit linear congruential generator (a = 1103515245, c = 12345)
    drives numerators in [-6, 6] and denominators in [1, 4]; the recipe is
    frozen here so reports are byte-identical across platforms.
    """
    from fractions import Fraction

    state = seed & 0x7FFFFFFF
    while True:
        state = (1103515245 * state + 12345) % (2**31)
        num = (state % 13) - 6
        state = (1103515245 * state + 12345) % (2**31)
        den = 1 + state % 4
        yield Fraction(num, den)


def _transport_samples(alg, proj, seed: int, count: int):
    stream = rational_stream(seed)
    results = []
    for k in range(count):
        e = [next(stream) for _ in range(3)]
        b = [next(stream) for _ in range(3)]
        f_upper = [[0] * 4 for _ in range(4)]
        for i in range(3):
            f_upper[0][i + 1] = e[i]
            f_upper[i + 1][0] = -e[i]
        f_upper[1][2], f_upper[2][1] = -b[2], b[2]
        f_upper[2][3], f_upper[3][2] = -b[0], b[0]
        f_upper[1][3], f_upper[3][1] = b[1], -b[1]
        phi = tuple(GaussianRational(next(stream), next(stream)) for _ in range(10))
        mu = next(stream)
        results.append(proca_mod.check_interaction_transport(alg, proj, f_upper, phi, mu)["ok"])
    return results


def _store_report(report: RunReport) -> Path:
    path = _report_dir() / LAST_REPORT
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.to_json())
    return path


def cmd_verify_algebra(inject_ring_defect: bool = False, seed: int = 0,
                       transport_samples: int = 20) -> RunReport:
    """Run every exact identity suite and return the deterministic report."""
    report = RunReport(suite="verify-algebra")
    alg_d = dirac_mod.build_dirac()
    ident4 = ExactMatrix.identity(4)

    # Clifford pairs (16) and gamma5 anticommutation (4)
    for m in range(4):
        for n in range(4):
            target = ident4.scale(2 * dirac_mod.METRIC[m]) if m == n else ExactMatrix.zeros(4)
            ok = anticommutator(alg_d.gamma[m], alg_d.gamma[n]) == target
            report.add(f"clifford ({m},{n})", ok)
    for m in range(4):
        report.add(f"gamma5 anticommutes with gamma^{m}",
                   anticommutator(alg_d.gamma5, alg_d.gamma[m]).is_zero())

    # spin-half phase-operator commutators (4)
    for rec in dirac_mod.check_phase_commutation_spinhalf(alg_d):
        report.add(rec["name"], rec["ok"], detail="zero" if rec["is_zero"] else "nonzero")

    # Kemmer ring (64), optionally with an injected defect as a negative control
    alg_k = kemmer_mod.build_betas()
    if inject_ring_defect:
        broken = list(alg_k.beta)
        entries = list(broken[0].entries())
        entries[6] = GaussianRational(0)  # zero one of the six +1 entries
        broken[0] = ExactMatrix(10, 10, entries)
        alg_k = kemmer_mod.KemmerAlgebra(beta=tuple(broken))
    for t in kemmer_mod.check_ring(alg_k)["triples"]:
        lam, mu, nu = t["indices"]
        report.add(f"ring ({lam},{mu},{nu})", t["ok"])

    ops = kemmer_mod.build_spin_operators(kemmer_mod.build_betas())
    alg_clean = kemmer_mod.build_betas()
    report.add("normalization b solved", True,
               measured=repr(ops.normalization), detail="S_munu = b [beta_mu, beta_nu]")

    # xi commutators (4) and operator identities (8 records)
    for rec in kemmer_mod.check_xi_commutators(alg_clean, ops):
        report.add(rec["name"], rec["ok"], detail="zero" if rec["is_zero"] else "nonzero")
    for rec in kemmer_mod.check_operator_identity_one(alg_clean, ops):
        report.add(rec["name"], rec["ok"])

    # projection identities (16 + 64) and spin correspondence
    proj = proca_mod.build_projections(alg_clean)
    for rec in proca_mod.check_projection_identities(alg_clean, proj):
        report.add(rec["name"], rec["ok"])
    for rec in proca_mod.check_spin_correspondence(alg_clean, ops)["records"]:
        report.add(rec["name"], rec["ok"])
    report.add("xi_3 does not commute with the projectors",
               proca_mod.xi_u_noncommutation(alg_clean, ops, proj))

    for k, ok in enumerate(_transport_samples(alg_clean, proj, seed, transport_samples)):
        report.add(f"interaction transport sample {k}", ok,
                   detail=f"seed {seed}, exact random F and phi")

    report.tables["component_layout"] = [
        {"slot": row["slot"], "quantity": row["quantity"],
         "coefficient": repr(row["coefficient"]), "sqrt_m_power": row["sqrt_m_power"]}
        for row in proca_mod.component_layout(proj)
    ]
    return report


@dataclass
class Scenario:
    """Parsed scenario file: spin sector, field, loop, grid and numerics."""

    name: str
    spin: str
    s: int
    mu: float
    mass: float
    field: FieldConfig
    lam: float
    loop: LoopPath
    winding: int
    grid: GridSpec
    tol: float
    seed: int
    momentum: tuple


def _require(cfg, section, key):
    if not cfg.has_option(section, key):
        raise KeyError(f"scenario is missing [{section}] {key}")
    return cfg.get(section, key)


def load_scenario(path, tol_override=None, grid_h_override=None, seed_override=None) -> Scenario:
    cfg = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = cfg.read(path)
    if not read:
        raise FileNotFoundError(f"cannot read scenario file {path}")

    spin = _require(cfg, "scenario", "spin").strip()
    if spin not in ("half", "one"):
        raise ValueError(f"[scenario] spin must be 'half' or 'one', got {spin!r}")
    s = int(_require(cfg, "scenario", "s"))
    mu = float(_require(cfg, "scenario", "mu"))
    mass = cfg.getfloat("scenario", "m", fallback=1.0)

    kind = _require(cfg, "field", "kind").strip()
    lam = 0.0
    if kind == "line_charge":
        lam = float(_require(cfg, "field", "lambda"))
        field = FieldConfig.line_charge(lam)
    elif kind == "uniform_e":
        field = FieldConfig.uniform_e(
            cfg.getfloat("field", "e1", fallback=0.0),
            cfg.getfloat("field", "e2", fallback=0.0),
            cfg.getfloat("field", "e3", fallback=0.0),
        )
    else:
        raise ValueError(f"[field] kind must be 'line_charge' or 'uniform_e', got {kind!r}")

    shape = cfg.get("loop", "shape", fallback="circle").strip()
    center = tuple(float(v) for v in cfg.get("loop", "center", fallback="0 0").split())
    winding = cfg.getint("loop", "winding", fallback=1)
    radius = cfg.getfloat("loop", "radius", fallback=1.0)
    if shape == "circle":
        loop = LoopPath.circle(center, radius, n=cfg.getint("loop", "segments", fallback=64),
                               winding=winding if winding != 0 else 1)
    elif shape == "square":
        loop = LoopPath.square(center, half=radius)
    elif shape == "triangle":
        loop = LoopPath.triangle(center, radius=radius)
    else:
        raise ValueError(f"[loop] shape must be circle, square or triangle, got {shape!r}")

    grid = GridSpec(
        origin=(cfg.getfloat("grid", "x0", fallback=0.8), cfg.getfloat("grid", "y0", fallback=0.1)),
        n=cfg.getint("grid", "n", fallback=17),
        h=grid_h_override if grid_h_override else cfg.getfloat("grid", "h", fallback=0.004),
    )
    tol = tol_override if tol_override else cfg.getfloat("numerics", "tol", fallback=1e-9)
    seed = seed_override if seed_override is not None else cfg.getint("numerics", "seed", fallback=0)
    momentum = tuple(float(v) for v in cfg.get("numerics", "momentum", fallback="0 0").split())
    return Scenario(name=cfg.get("scenario", "name", fallback=Path(path).stem),
                    spin=spin, s=s, mu=mu, mass=mass, field=field, lam=lam, loop=loop,
                    winding=winding, grid=grid, tol=tol, seed=seed, momentum=momentum)


def cmd_verify_phase(scenario: Scenario) -> RunReport:
    """Full phase verification for one scenario."""
    report = RunReport(suite=f"verify-phase:{scenario.name}")
    ansatz = PhaseAnsatz(spin=scenario.spin, s=scenario.s, mu=scenario.mu,
                         field=scenario.field, base_point=scenario.grid.origin)

    winding = scenario.loop.winding_number()
    report.add("loop winding metadata", winding == scenario.winding,
               measured=winding, expected=scenario.winding)

    if scenario.field.kind == "line_charge":
        predicted = predicted_phase(scenario.spin, scenario.mu, scenario.lam, scenario.s) * winding
        measured = measured_loop_phase(ansatz, scenario.loop, scenario.tol)
        report.add("loop phase vs closed formula", abs(measured - predicted) <= 4 * scenario.tol,
                   measured=measured, expected=predicted, tolerance=4 * scenario.tol)
        if scenario.lam != 0.0 and winding != 0:
            ratio = spin_ratio_experiment(scenario.mu, scenario.lam, scenario.loop, scenario.tol)
            report.add("spin-one to spin-half ratio", abs(ratio - 2.0) <= 1e-6,
                       measured=ratio, expected=2.0, tolerance=1e-6)
    else:
        measured = measured_loop_phase(ansatz, scenario.loop, scenario.tol)
        report.add("uniform-field loop phase vanishes", abs(measured) <= 4 * scenario.tol,
                   measured=measured, expected=0.0, tolerance=4 * scenario.tol)

    momentum = scenario.momentum if any(scenario.momentum) else None
    try:
        if scenario.spin == "half":
            alg = dirac_mod.build_dirac()
            sub = verify_ansatz_dirac(ansatz, scenario.grid, alg,
                                      momentum=momentum, mass=scenario.mass)
            report.extend_from_checks(sub.checks, prefix="dirac: ")
        else:
            alg = kemmer_mod.build_betas()
            ops = kemmer_mod.build_spin_operators(alg)
            sub = verify_ansatz_kemmer(ansatz, scenario.grid, alg, ops,
                                       momentum=momentum, mass=scenario.mass)
            report.extend_from_checks(sub.checks, prefix="kemmer: ")
            sub = verify_ansatz_proca(ansatz, scenario.grid, mass=scenario.mass)
            report.extend_from_checks(sub.checks, prefix="proca: ")
    except ValueError as exc:
        report.add("ansatz preconditions", False, detail=str(exc))
    return report


def cmd_report(from_path, fmt: str, out_path) -> int:
    try:
        text = Path(from_path).read_text()
        report = RunReport.from_json(text)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot load report from {from_path}: {exc}", file=sys.stderr)
        return 2
    payload = report.to_json() if fmt == "json" else report.to_text()
    if out_path in (None, "-"):
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")
        return 0
    try:
        Path(out_path).write_text(payload)
    except OSError as exc:
        print(f"error: cannot write report to {out_path}: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="acphase",
        description="Exact-algebra and numerical verification of relativistic "
                    "Aharonov-Casher phases at spin 1/2 and spin 1.")
    parser.add_argument("--tol", type=float, default=None, help="override quadrature tolerance")
    parser.add_argument("--seed", type=int, default=None, help="override scenario seed")
    parser.add_argument("--grid-h", type=float, default=None, help="override grid step")
    sub = parser.add_subparsers(dest="command", required=True)

    p_alg = sub.add_parser("verify-algebra", help="run all exact identity suites")
    p_alg.add_argument("--inject-ring-defect", action="store_true",
                       help="negative-control hook: perturb one beta entry")

    p_phase = sub.add_parser("verify-phase", help="run a scenario file")
    p_phase.add_argument("scenario", help="path to an INI scenario file")

    p_rep = sub.add_parser("report", help="re-serialize a stored report")
    p_rep.add_argument("--format", choices=("json", "text"), default="text")
    p_rep.add_argument("--out", default="-")
    p_rep.add_argument("--from", dest="from_path", default=None,
                       help="report file (default: last_report.json in the report dir)")

    args = parser.parse_args(argv)

    if args.command == "verify-algebra":
        report = cmd_verify_algebra(inject_ring_defect=args.inject_ring_defect,
                                    seed=args.seed if args.seed is not None else 0)
        _store_report(report)
        sys.stdout.write(report.to_text())
        return 0 if report.overall == "pass" else 1

    if args.command == "verify-phase":
        try:
            scenario = load_scenario(args.scenario, tol_override=args.tol,
                                     grid_h_override=args.grid_h, seed_override=args.seed)
        except (OSError, KeyError, ValueError) as exc:
            print(f"error: invalid scenario: {exc}", file=sys.stderr)
            return 2
        report = cmd_verify_phase(scenario)
        _store_report(report)
        sys.stdout.write(report.to_text())
        return 0 if report.overall == "pass" else 1

    if args.command == "report":
        from_path = args.from_path or (_report_dir() / LAST_REPORT)
        return cmd_report(from_path, args.format, args.out)

    return 2


if __name__ == "__main__":
    sys.exit(main())
