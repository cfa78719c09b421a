"""Path-dependent phase construction and the three ansatz verifications.

Coupling placement: the effective potential A' carries the full coupling
(mu (-E2, E1) at spin 1/2, 2 mu (-E2, E1) at spin 1) and every accumulated
phase is s times the line integral of A'.  The loop values then reproduce
the closed formulas mu lambda s and 2 mu lambda s directly.

Phase orientation, fixed by exact residual cancellation rather than taken on
faith: the interacting spin-1/2 solution is e^{-i s chi} times the free wave,
while the interacting spin-1 solutions (Kemmer and Proca alike, with the
commutator-form coupling) are e^{+i s3 chi} times the free ones.  chi(x) is
accumulated by quadrature along a straight reference path from a base point,
and is path independent inside the simply connected region off the axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import dirac as dirac_mod
from . import kemmer as kemmer_mod
from ._fd import check_grid, convergence_order
from .fields import FieldConfig, LoopPath, field_tensor, loop_integral, open_path_integral

ORDER_WINDOW = (1.8, 2.2)


def coupling_factor(spin: str, mu: float) -> float:
    """Full coupling carried by A': mu for spin half, 2 mu for spin one."""
    if spin == "half":
        return mu
    if spin == "one":
        return 2.0 * mu
    raise ValueError(f"unknown spin {spin!r}")


def predicted_phase(spin: str, mu: float, lam: float, s: int) -> float:
    """Closed-form loop phase: mu lambda s (spin half), 2 mu lambda s (spin one)."""
    if spin == "half":
        if s not in (+1, -1):
            raise ValueError("spin-half states carry s = +1 or -1")
        return mu * lam * s
    if spin == "one":
        if s not in (+1, 0, -1):
            raise ValueError("spin-one s3 must be one of -1, 0, +1")
        return 2.0 * mu * lam * s
    raise ValueError(f"unknown spin {spin!r}")


@dataclass(frozen=True)
class PhaseAnsatz:
    """Phase ansatz for one spin sector in a fixed field configuration."""

    spin: str
    s: int
    mu: float
    field: FieldConfig
    base_point: tuple = (1.0, 0.0)

    def __post_init__(self):
        if self.spin not in ("half", "one"):
            raise ValueError(f"unknown spin {self.spin!r}")
        if self.spin == "half" and self.s not in (+1, -1):
            raise ValueError("spin-half states carry s = +1 or -1")
        if self.spin == "one" and self.s not in (+1, 0, -1):
            raise ValueError("s3 must be -1, 0 or +1")

    @property
    def operator_form(self) -> str:
        return "gamma5 gamma^3" if self.spin == "half" else "xi_3"

    def a_prime(self, x) -> np.ndarray:
        """Effective potential at a plane point, full coupling included."""
        e = self.field.e_at(x)
        c = coupling_factor(self.spin, self.mu)
        return np.array([-c * e[1], c * e[0]])

    def chi(self, x) -> float:
        """Accumulated phase integrand: straight-path integral of A' from base.

        Path independence away from the axis (curl A' is proportional to
        div E, which vanishes there) is asserted as a test property, not
        assumed here.
        """
        return open_path_integral(self.a_prime, [self.base_point, tuple(x)])

    def chi_grid(self, origin, h: float, n: int) -> np.ndarray:
        x0, y0 = origin
        xs = x0 + h * np.arange(n)
        ys = y0 + h * np.arange(n)
        return np.array([[self.chi((x, y)) for y in ys] for x in xs])


def measured_loop_phase(ansatz: PhaseAnsatz, path: LoopPath, tol: float = 1e-9) -> float:
    """s times the closed-loop integral of the ansatz's A'."""
    return ansatz.s * loop_integral(ansatz.a_prime, path, tol)


def spin_ratio_experiment(mu: float, lam: float, path: LoopPath, tol: float = 1e-9) -> float:
    """Measured spin-one phase over measured spin-half phase; equals 2."""
    if lam == 0.0:
        raise ValueError("degenerate experiment: lambda must be nonzero")
    field = FieldConfig.line_charge(lam)
    half = measured_loop_phase(PhaseAnsatz("half", +1, mu, field), path, tol)
    one = measured_loop_phase(PhaseAnsatz("one", +1, mu, field), path, tol)
    return one / half


@dataclass
class PhaseReport:
    """Outcome of one ansatz verification: residuals, orders, pass flags."""

    name: str
    checks: list = dc_field(default_factory=list)

    def add(self, name: str, ok: bool, measured=None, expected=None, tolerance=None, detail=""):
        self.checks.append({
            "name": name, "status": "pass" if ok else "fail",
            "measured": measured, "expected": expected,
            "tolerance": tolerance, "detail": detail,
        })

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)


@dataclass(frozen=True)
class GridSpec:
    """Uniform square patch: n points per axis starting at origin, step h."""

    origin: tuple
    n: int
    h: float

    def refined(self) -> "GridSpec":
        """Same patch extent with the step halved."""
        return GridSpec(origin=self.origin, n=2 * self.n - 1, h=0.5 * self.h)


def _require_ac(field: FieldConfig):
    if not field.is_ac_configuration():
        raise ValueError("not an AC configuration: need B = 0 and E_3 = 0, fields independent of x^3")


def _sample_free(wave, grid: GridSpec, dim: int) -> np.ndarray:
    ts = grid.h * np.array([-1.0, 0.0, 1.0])
    xs = grid.origin[0] + grid.h * np.arange(grid.n)
    ys = grid.origin[1] + grid.h * np.arange(grid.n)
    tt, xx, yy = np.meshgrid(ts, xs, ys, indexing="ij")
    return wave(tt, xx, yy)


def _dirac_residual_pair(ansatz, wave, grid, mass, alg, scale=1.0, orientation=-1):
    out = []
    for g in (grid, grid.refined()):
        free = _sample_free(wave, g, 4)
        if scale == 0.0:
            arr = free
        else:
            chi = ansatz.chi_grid(g.origin, g.h, g.n) * scale
            arr = free * np.exp(orientation * 1j * ansatz.s * chi)[None, :, :, None]
        out.append(dirac_mod.dirac_pauli_residual(arr, ansatz.field, ansatz.mu, mass,
                                                  g.h, g.origin, alg))
    return out


def verify_ansatz_dirac(ansatz: PhaseAnsatz, grid: GridSpec, alg,
                        momentum=None, mass: float = 1.0) -> PhaseReport:
    """Grid verification that e^{-i s chi} psi_free solves the spin-1/2 equation.

    Runs the finite-difference residual at h and h/2 and requires convergence
    order inside the second-order window; a detuned-coupling control (A'
    scaled by 0.9) must stay at order zero with an order-one residual.
    """
    if ansatz.spin != "half":
        raise ValueError("spin-half ansatz required")
    _require_ac(ansatz.field)
    check_grid(ansatz.field, grid.origin, grid.h, grid.n)
    p = _default_momentum(momentum, mass)
    wave = dirac_mod.free_plane_wave_dirac(p, ansatz.s, alg, mass)
    report = PhaseReport(name="dirac_pauli phase ansatz")

    r_c, r_f = _dirac_residual_pair(ansatz, wave, grid, mass, alg)
    order = convergence_order(r_c, r_f)
    report.add("residual order (phase ansatz)", ORDER_WINDOW[0] <= order <= ORDER_WINDOW[1],
               measured=order, expected=2.0, tolerance=0.2,
               detail=f"residuals {r_c:.3e} -> {r_f:.3e}")

    d_c, d_f = _dirac_residual_pair(ansatz, wave, grid, mass, alg, scale=0.9)
    d_order = convergence_order(d_c, d_f)
    interaction_scale = _interaction_scale(ansatz, grid, mass, spin_dim=4)
    report.add("detuned coupling stays order one", d_order < 1.0 and d_f > 0.02 * interaction_scale,
               measured=d_order, expected=0.0, tolerance=1.0,
               detail=f"residuals {d_c:.3e} -> {d_f:.3e}")

    b_c, b_f = _dirac_residual_pair(ansatz, wave, grid, mass, alg, scale=0.0)
    report.add("bare free wave feels the interaction", b_f > 0.25 * interaction_scale,
               measured=b_f, expected=interaction_scale, tolerance=0.75 * interaction_scale,
               detail="unmodified free wave, nonzero field")
    return report


def _default_momentum(momentum, mass):
    if momentum is None:
        return np.array([mass, 0.0, 0.0, 0.0])
    p1, p2 = momentum
    return np.array([math.sqrt(mass**2 + p1**2 + p2**2), p1, p2, 0.0])


def _interaction_scale(ansatz, grid, mass, spin_dim):
    """Magnitude of the coupling term at the patch center, for control bounds."""
    center = (grid.origin[0] + grid.h * (grid.n // 2), grid.origin[1] + grid.h * (grid.n // 2))
    e = ansatz.field.e_at(center)
    return coupling_factor(ansatz.spin, ansatz.mu) * float(np.hypot(e[0], e[1])) * mass


def verify_ansatz_kemmer(ansatz: PhaseAnsatz, grid: GridSpec, alg, spin_ops,
                         momentum=None, mass: float = 1.0) -> PhaseReport:
    """Grid verification that e^{+i s3 chi} phi_free solves the spin-1 equation.

    Re-verifies the algebraic preconditions (xi commutators and the beta.xi
    operator identities) and includes them in the report alongside the
    residual-order and negative-control checks.
    """
    if ansatz.spin != "one":
        raise ValueError("spin-one ansatz required")
    if ansatz.s == 0:
        raise ValueError("s3 = 0 states are excluded from phase verification")
    _require_ac(ansatz.field)
    check_grid(ansatz.field, grid.origin, grid.h, grid.n)
    report = PhaseReport(name="kemmer phase ansatz")

    for rec in kemmer_mod.check_xi_commutators(alg, spin_ops):
        report.add(f"precondition {rec['name']}", rec["ok"])
    for rec in kemmer_mod.check_operator_identity_one(alg, spin_ops):
        report.add(f"precondition {rec['name']}", rec["ok"])

    p = _default_momentum(momentum, mass)
    wave = kemmer_mod.kemmer_plane_wave(p, ansatz.s, alg, mass)

    def residual_pair(scale, orientation=+1):
        out = []
        for g in (grid, grid.refined()):
            free = _sample_free(wave, g, 10)
            if scale == 0.0:
                arr = free
            else:
                chi = ansatz.chi_grid(g.origin, g.h, g.n) * scale
                arr = free * np.exp(orientation * 1j * ansatz.s * chi)[None, :, :, None]
            out.append(kemmer_mod.kemmer_residual(arr, ansatz.field, ansatz.mu, mass,
                                                  g.h, g.origin, alg))
        return out

    r_c, r_f = residual_pair(1.0)
    order = convergence_order(r_c, r_f)
    report.add("residual order (phase ansatz)", ORDER_WINDOW[0] <= order <= ORDER_WINDOW[1],
               measured=order, expected=2.0, tolerance=0.2,
               detail=f"residuals {r_c:.3e} -> {r_f:.3e}")

    d_c, d_f = residual_pair(0.9)
    d_order = convergence_order(d_c, d_f)
    interaction_scale = _interaction_scale(ansatz, grid, mass, spin_dim=10)
    report.add("detuned coupling stays order one", d_order < 1.0 and d_f > 0.02 * interaction_scale,
               measured=d_order, expected=0.0, tolerance=1.0,
               detail=f"residuals {d_c:.3e} -> {d_f:.3e}")

    w_c, w_f = residual_pair(1.0, orientation=-1)
    report.add("wrong-sign A' stays order one", convergence_order(w_c, w_f) < 1.0
               and w_f > 0.1 * interaction_scale,
               measured=convergence_order(w_c, w_f), expected=0.0, tolerance=1.0,
               detail=f"residuals {w_c:.3e} -> {w_f:.3e}")
    return report


def _f_first_low(field: FieldConfig, x) -> np.ndarray:
    """F_mu^{ nu} = F_{mu rho} eta^{rho nu} at a point (first index lowered)."""
    eta = np.diag([1.0, -1.0, -1.0, -1.0])
    f_up = field_tensor(field.e_at(x), field.b_at(x))
    return eta @ f_up

def curly_f(field: FieldConfig, x, psi4) -> np.ndarray:
    """Interaction vector curly-F^nu = F_mu^{ nu} psi^mu at a point."""
    fm = _f_first_low(field, x)
    return np.array([np.sum(fm[:, nu] * psi4) for nu in range(4)])


def verify_ansatz_proca(ansatz: PhaseAnsatz, grid: GridSpec,
                        mass: float = 1.0, tol_exact: float = 1e-12) -> PhaseReport:
    """The four Proca-side checks on a rest-polarization plane-wave state.

    With free pair (psi_f, G_f) and interacting pair (psi, G) = e^{+i s3 chi}
    times it, verifies on the grid that
      (a) the phase-stripped (primed) pair solves the free-form vector
          equation at second order,
      (b) the interacting pair solves the interacting vector equation with
          the transported coupling at second order,
      (c) the subsidiary link 2 i mu d_nu curlyF^nu = -i s3 m A'_nu psi^nu
          holds pointwise at second order,
      (d) curlyF^i vanishes and the coupling's time component reduces to
          2 i mu m (E_1 psi^1 + E_2 psi^2) exactly at sampled points.
    """
    if ansatz.spin != "one":
        raise ValueError("spin-one ansatz required")
    if ansatz.s == 0:
        raise ValueError("s3 = 0 states are excluded from phase verification")
    _require_ac(ansatz.field)
    check_grid(ansatz.field, grid.origin, grid.h, grid.n)
    # static fields guarantee A'_0 = 0 and d_0 A' = 0; E_3 = 0 was checked above
    report = PhaseReport(name="proca phase ansatz")
    s3 = ansatz.s
    eps = kemmer_mod.rest_polarization(s3)
    p = np.array([mass, 0.0, 0.0, 0.0])
    g_amp = -1j * (np.outer(p, eps) - np.outer(eps, p))

    def pair_at(orientation):
        """(psi, G) fields as callables of (t, x1, x2)."""

        def phase(t, x1, x2):
            plane = np.exp(-1j * (p[0] * t - p[1] * x1 - p[2] * x2))
            if orientation == 0:
                return plane
            return plane * np.exp(orientation * 1j * s3 * ansatz.chi((x1, x2)))

        return (lambda t, x1, x2: eps * phase(t, x1, x2),
                lambda t, x1, x2: g_amp * phase(t, x1, x2))

    def div_g(gf, t, x1, x2, h):
        return ((gf(t + h, x1, x2)[0] - gf(t - h, x1, x2)[0]) / (2 * h)
                + (gf(t, x1 + h, x2)[1] - gf(t, x1 - h, x2)[1]) / (2 * h)
                + (gf(t, x1, x2 + h)[2] - gf(t, x1, x2 - h)[2]) / (2 * h))

    pts = _interior_samples(grid)

    def procatwo_residual(h):
        psi_free, g_free = pair_at(0)
        worst = 0.0
        for x1, x2 in pts:
            r = div_g(g_free, 0.0, x1, x2, h) + mass**2 * psi_free(0.0, x1, x2)
            worst = max(worst, float(np.max(np.abs(r))))
        return worst

    def procaone_residual(h, scale=1.0):
        psi_i, g_i = pair_at(+1)
        worst = 0.0
        for x1, x2 in pts:
            ps = psi_i(0.0, x1, x2)
            cf = curly_f(ansatz.field, (x1, x2), ps)
            r = div_g(g_i, 0.0, x1, x2, h) + scale * 2j * ansatz.mu * mass * cf \
                + mass**2 * ps
            worst = max(worst, float(np.max(np.abs(r))))
        return worst

    r_c, r_f = procatwo_residual(grid.h), procatwo_residual(grid.h / 2)
    order = convergence_order(r_c, r_f)
    report.add("phase-stripped pair solves the free-form equation",
               ORDER_WINDOW[0] <= order <= ORDER_WINDOW[1],
               measured=order, expected=2.0, tolerance=0.2,
               detail=f"residuals {r_c:.3e} -> {r_f:.3e}")

    r_c, r_f = procaone_residual(grid.h), procaone_residual(grid.h / 2)
    order = convergence_order(r_c, r_f)
    report.add("interacting pair solves the coupled equation",
               ORDER_WINDOW[0] <= order <= ORDER_WINDOW[1],
               measured=order, expected=2.0, tolerance=0.2,
               detail=f"residuals {r_c:.3e} -> {r_f:.3e}")

    d_c, d_f = procaone_residual(grid.h, scale=0.9), procaone_residual(grid.h / 2, scale=0.9)
    interaction_scale = _interaction_scale(ansatz, grid, mass, spin_dim=4)
    report.add("detuned coupling stays order one",
               convergence_order(d_c, d_f) < 1.0 and d_f > 0.02 * interaction_scale,
               measured=convergence_order(d_c, d_f), expected=0.0, tolerance=1.0,
               detail=f"residuals {d_c:.3e} -> {d_f:.3e}")

    def link_defect(h):
        psi_i, _ = pair_at(+1)
        worst = 0.0
        for x1, x2 in pts:
            dcf = 0.0 + 0.0j
            for (dt, dx, dy, comp) in ((h, 0, 0, 0), (0, h, 0, 1), (0, 0, h, 2)):
                plus = curly_f(ansatz.field, (x1 + dx, x2 + dy), psi_i(dt, x1 + dx, x2 + dy))[comp]
                minus = curly_f(ansatz.field, (x1 - dx, x2 - dy), psi_i(-dt, x1 - dx, x2 - dy))[comp]
                dcf += (plus - minus) / (2 * h)
            ps = psi_i(0.0, x1, x2)
            a = ansatz.a_prime((x1, x2))
            rhs = -1j * s3 * mass * (a[0] * ps[1] + a[1] * ps[2])
            worst = max(worst, abs(2j * ansatz.mu * dcf - rhs))
        return worst

    l_c, l_f = link_defect(grid.h), link_defect(grid.h / 2)
    order = convergence_order(l_c, l_f)
    report.add("subsidiary link holds pointwise",
               ORDER_WINDOW[0] <= order <= ORDER_WINDOW[1] or l_f < 1e-13,
               measured=order, expected=2.0, tolerance=0.2,
               detail=f"defect {l_c:.3e} -> {l_f:.3e}")

    psi_i, _ = pair_at(+1)
    reduction_ok = True
    for x1, x2 in pts[:5]:
        ps = psi_i(0.0, x1, x2)
        cf = curly_f(ansatz.field, (x1, x2), ps)
        e = ansatz.field.e_at((x1, x2))
        coupling = 2j * ansatz.mu * mass * cf[0]
        target = 2j * ansatz.mu * mass * (e[0] * ps[1] + e[1] * ps[2])
        scale0 = max(abs(target), 1.0)
        if np.max(np.abs(cf[1:])) > tol_exact or abs(coupling - target) > tol_exact * scale0:
            reduction_ok = False
    report.add("coupling reduces to its time component on spin eigenstates",
               reduction_ok, detail="curlyF^i = 0 and 2i mu m (E1 psi1 + E2 psi2) at samples")
    return report


def _interior_samples(grid: GridSpec, count: int = 9):
    xs = grid.origin[0] + grid.h * np.arange(1, grid.n - 1)
    ys = grid.origin[1] + grid.h * np.arange(1, grid.n - 1)
    step = max(len(xs) // 3, 1)
    return [(float(x), float(y)) for x in xs[::step] for y in ys[::step]][:count]
