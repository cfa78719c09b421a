"""Spin-1/2 layer: Dirac algebra, plane waves, and the Dirac-Pauli residual.

Conventions used throughout the package:
  metric eta = diag(+1,-1,-1,-1), natural units hbar = c = 1;
  standard representation gamma^0 = diag(1,1,-1,-1);
  gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3;
  sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu].

The anomalous-moment equation is (i gamma^mu d_mu + (mu/2) sigma_{ab} F^{ab}
- m) psi = 0 for a pure electric field.  Its exact solutions in the
Aharonov-Casher configuration are e^{-i s chi(x)} times free plane waves,
where s is the gamma5 gamma^3 eigenvalue and grad chi = mu (-E2, E1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import (
    ExactMatrix,
    GaussianRational,
    IUNIT,
    anticommutator,
    commutator,
    to_numeric,
)
from ._fd import first_order_residual
from .fields import FieldConfig, field_tensor

METRIC = (1, -1, -1, -1)

_I = 1j


def _sigma_blocks():
    s1 = [[0, 1], [1, 0]]
    s2 = [[0, -_I], [_I, 0]]
    s3 = [[1, 0], [0, -1]]
    return s1, s2, s3


@dataclass(frozen=True)
class DiracAlgebra:
    """The four 4x4 gamma matrices in the standard representation."""

    gamma: tuple
    gamma5: ExactMatrix

    @property
    def metric(self):
        return METRIC


def build_dirac() -> DiracAlgebra:
    """Standard-representation gamma matrices, Clifford-verified on construction."""
    s1, s2, s3 = _sigma_blocks()

    def four(a, b, c, d):
        out = []
        for r in range(2):
            out.append(list(a[r]) + list(b[r]))
        for r in range(2):
            out.append(list(c[r]) + list(d[r]))
        return ExactMatrix.from_rows(out)

    z2 = [[0, 0], [0, 0]]
    i2 = [[1, 0], [0, 1]]
    ni2 = [[-1, 0], [0, -1]]
    g0 = four(i2, z2, z2, ni2)
    gk = [four(z2, sk, [[-e for e in row] for row in sk], z2) for sk in (s1, s2, s3)]
    gamma = (g0, gk[0], gk[1], gk[2])

    ident = ExactMatrix.identity(4)
    for m in range(4):
        for n in range(4):
            target = ident.scale(2 * METRIC[m]) if m == n else ExactMatrix.zeros(4)
            if anticommutator(gamma[m], gamma[n]) != target:
                raise AssertionError(f"Clifford relation failed for ({m},{n})")
    if gamma[0].dagger() != gamma[0]:
        raise AssertionError("gamma^0 must be hermitian")
    for k in (1, 2, 3):
        if gamma[k].dagger() != -gamma[k]:
            raise AssertionError(f"gamma^{k} must be antihermitian")

    g5 = (gamma[0] @ gamma[1] @ gamma[2] @ gamma[3]).scale(IUNIT)
    return DiracAlgebra(gamma=gamma, gamma5=g5)


def sigma_munu(alg: DiracAlgebra, mu: int, nu: int) -> ExactMatrix:
    """sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu], both indices upper."""
    if not (0 <= mu <= 3 and 0 <= nu <= 3):
        raise ValueError("indices must be in 0..3")
    return commutator(alg.gamma[mu], alg.gamma[nu]).scale(GaussianRational(0, 1) / 2)


def sigma_lower(alg: DiracAlgebra, mu: int, nu: int) -> ExactMatrix:
    """sigma_{mu nu}, obtained from sigma^{mu nu} by lowering both indices."""
    return sigma_munu(alg, mu, nu).scale(METRIC[mu] * METRIC[nu])


@dataclass(frozen=True)
class PhaseOperatorSpinHalf:
    """The spin-1/2 phase operator Gamma gamma^0, Gamma a planar gamma pair.

    Gamma is taken as gamma^2 gamma^1, the ordering for which i Gamma gamma^0
    equals gamma5 gamma^3 exactly (the reversed order differs by a sign).
    gamma_operator squares to -I, so its exponential is a rotation; the
    eigenvalues +-1 of gamma5 gamma^3 label spin along the excluded axis.
    """

    gamma_operator: ExactMatrix
    w_operator: ExactMatrix
    plane_normal: int = 3


def build_phase_operator(alg: DiracAlgebra) -> PhaseOperatorSpinHalf:
    gg0 = alg.gamma[2] @ alg.gamma[1] @ alg.gamma[0]
    w = alg.gamma5 @ alg.gamma[3]
    if gg0.scale(IUNIT) != w:
        raise AssertionError("i Gamma gamma^0 must equal gamma5 gamma^3")
    if gg0 @ gg0 != -ExactMatrix.identity(4):
        raise AssertionError("(Gamma gamma^0)^2 must equal -I")
    return PhaseOperatorSpinHalf(gamma_operator=gg0, w_operator=w)


def check_phase_commutation_spinhalf(alg: DiracAlgebra):
    """[gamma^nu, Gamma gamma^0] for nu = 0..3; zero except nu = 3.

    This is the machine form of the restriction to 2+1 dimensions: the phase
    operator commutes with every derivative term the wave function is allowed
    to depend on, so d_3 psi must vanish.  The zero pattern is unchanged by
    the ordering of the planar pair inside Gamma.
    """
    op = alg.gamma[1] @ alg.gamma[2] @ alg.gamma[0]
    records = []
    for nu in range(4):
        c = commutator(alg.gamma[nu], op)
        want_zero = nu != 3
        records.append({
            "name": f"[gamma^{nu}, gamma^1 gamma^2 gamma^0]",
            "is_zero": c.is_zero(),
            "ok": c.is_zero() == want_zero,
        })
    return records


def effective_potential_spinhalf(e_field) -> tuple:
    """A'_i = -eps_{ij} E_j with eps_12 = +1, i.e. (A'_1, A'_2) = (-E_2, E_1)."""
    e1, e2 = float(e_field[0]), float(e_field[1])
    return (-e2, e1)


_REST_SPINOR = {+1: (0, 1, 0, 0), -1: (1, 0, 0, 0)}


class DiracPlaneWave:
    """Free plane-wave solution u(p,s) exp(-i p.x) with p in the 1-2 plane.

    The spinor is an eigenvector of gamma5 gamma^3 with eigenvalue s, which
    survives boosts inside the plane of motion.
    """

    def __init__(self, p, s: int, spinor: np.ndarray, mass: float):
        self.p = np.asarray(p, dtype=float)
        self.s = s
        self.spinor = spinor
        self.mass = mass

    def __call__(self, t, x1, x2):
        phase = np.exp(-1j * (self.p[0] * t - self.p[1] * x1 - self.p[2] * x2))
        return self.spinor * np.asarray(phase)[..., None]


_NUMERIC_CACHE = {}


def _numeric_gammas(alg: DiracAlgebra):
    # keyed by id; the cache keeps the algebra alive so the id stays valid
    key = id(alg)
    if key not in _NUMERIC_CACHE:
        _NUMERIC_CACHE[key] = (alg, [to_numeric(g) for g in alg.gamma] + [to_numeric(alg.gamma5)])
    return _NUMERIC_CACHE[key][1]


def free_plane_wave_dirac(p, s: int, alg: DiracAlgebra, mass: float | None = None) -> DiracPlaneWave:
    """Free Dirac plane wave with definite gamma5 gamma^3 eigenvalue s.

    p must be on shell (p.p = m^2 within 1e-12 relative) with p_3 = 0; the
    spinor is (pslash + m) applied to the rest eigenspinor, which preserves
    the eigenvalue because gamma5 gamma^3 commutes with gamma^{0,1,2}.
    """
    if s not in (+1, -1):
        raise ValueError("s must be +1 or -1")
    p = np.asarray(p, dtype=float)
    p2 = p[0] ** 2 - p[1] ** 2 - p[2] ** 2 - p[3] ** 2
    if mass is None:
        if p2 <= 0:
            raise ValueError("momentum is not timelike")
        mass = float(np.sqrt(p2))
    if abs(p2 - mass**2) > 1e-12 * max(mass**2, 1.0):
        raise ValueError(f"off-shell momentum: p.p = {p2}, m^2 = {mass ** 2}")
    if p[3] != 0.0:
        raise ValueError("p_3 must vanish (wave function must not depend on x^3)")
    g = _numeric_gammas(alg)
    pslash = p[0] * g[0] - p[1] * g[1] - p[2] * g[2] - p[3] * g[3]
    u = (pslash + mass * np.eye(4)) @ np.array(_REST_SPINOR[s], dtype=complex)
    w = g[4] @ g[3]
    if not np.allclose(w @ u, s * u, atol=1e-12):
        raise AssertionError("spin eigenvalue lost in construction")
    return DiracPlaneWave(p=p, s=s, spinor=u, mass=mass)


def pauli_interaction(alg: DiracAlgebra, field: FieldConfig, mu: float):
    """Pointwise matrix (mu/2) sigma_{ab} F^{ab}(x) as a function of the 2-d point."""
    sig = {}
    for a in range(4):
        for b in range(a + 1, 4):
            sig[(a, b)] = to_numeric(sigma_lower(alg, a, b))

    def term(x):
        f = field_tensor(field.e_at(x), field.b_at(x))
        m = np.zeros((4, 4), dtype=complex)
        for (a, b), sab in sig.items():
            m += mu * f[a, b] * sab  # (mu/2) * 2 identical (a,b),(b,a) terms
        return m

    return term


def dirac_pauli_residual(psi: np.ndarray, field: FieldConfig, mu: float, mass: float,
                         h: float, origin, alg: DiracAlgebra) -> float:
    """Max-norm finite-difference residual of the Dirac-Pauli equation.

    psi has shape (3, nx, ny, 4): three time slices t = -h, 0, +h over a
    uniform rectangle starting at origin with step h.  Central differences,
    interior points only; the grid must keep 10h clear of a line-charge axis.
    """
    g = _numeric_gammas(alg)
    return first_order_residual(psi, g[:3], mass, pauli_interaction(alg, field, mu),
                                h, origin, field)
