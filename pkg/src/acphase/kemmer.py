"""Spin-1 layer: the 10-dimensional Kemmer beta algebra and its verifications.

The four 10x10 beta matrices are assembled from explicit 3x3 blocks (three
vector blocks plus one scalar slot) and satisfy the three-term ring relation

    b^l b^m b^n + b^n b^m b^l = eta^{lm} b^n + eta^{mn} b^l

exactly, which is re-verified on construction.  The pseudo-vector spin
operator xi_mu is built from the antisymmetrized triple product of betas with
the epsilon convention eps_{3012} = +1, which reproduces the cyclic form
xi_3 = i (b^0 b^1 b^2 + b^1 b^2 b^0 + b^2 b^0 b^1).

The anomalous-moment coupling is the commutator form
i mu [b^a, b^b] F_{ab} with lowered field components F_{0i} = -E_i.  With it,
the interacting solutions in the AC configuration are e^{+i s3 chi(x)} times
free plane waves for grad chi = A' = 2 mu (-E2, E1); the phase operator in
the exponent is xi_3, replaced by its eigenvalue s3 on spin eigenstates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    ExactMatrix,
    GaussianRational,
    IUNIT,
    commutator,
    to_numeric,
)
from ._fd import first_order_residual
from .fields import FieldConfig, field_tensor

METRIC = (1, -1, -1, -1)

BLOCKS = ((0, 3), (3, 6), (6, 9), (9, 10))

_I = 1j

# 3x3 spin blocks (S^k)_{ij} = -i eps_{kij} and unit row selectors K^k
S_BLOCK = {
    1: [[0, 0, 0], [0, 0, -_I], [0, _I, 0]],
    2: [[0, 0, _I], [0, 0, 0], [-_I, 0, 0]],
    3: [[0, -_I, 0], [_I, 0, 0], [0, 0, 0]],
}
K_BLOCK = {1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1)}


def _assemble(b11=None, b13=None, b23=None, b32=None, c14=None, c24=None, r41=None, diag3=None):
    """Build a 10x10 exact matrix from the handful of block positions we use."""
    rows = [[0] * 10 for _ in range(10)]

    def put3(block, r0, c0):
        for i in range(3):
            for j in range(3):
                rows[r0 + i][c0 + j] = block[i][j]

    if b11 is not None:
        put3(b11, 0, 0)
    if b13 is not None:
        put3(b13, 0, 6)
    if b23 is not None:
        put3(b23, 3, 6)
    if b32 is not None:
        put3(b32, 6, 3)
    if diag3 is not None:
        for base, blk in zip((0, 3, 6), diag3):
            if blk is not None:
                put3(blk, base, base)
    if c14 is not None:
        for i in range(3):
            rows[i][9] = c14[i]
    if c24 is not None:
        for i in range(3):
            rows[3 + i][9] = c24[i]
    if r41 is not None:
        for j in range(3):
            rows[9][j] = r41[j]
    return ExactMatrix.from_rows(rows)


@dataclass(frozen=True)
class KemmerAlgebra:
    """The four 10x10 beta matrices; ring relation holds for all 64 triples."""

    beta: tuple
    blocks: tuple = BLOCKS

    @property
    def metric(self):
        return METRIC

    def beta_lower(self, mu: int) -> ExactMatrix:
        return self.beta[mu] if METRIC[mu] > 0 else -self.beta[mu]


def _neg(block):
    return [[-e for e in row] for row in block]


def build_betas(verify: bool = True) -> KemmerAlgebra:
    """Assemble the betas from their printed blocks and verify the ring."""
    i3 = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    beta0 = _assemble(b13=i3) + _assemble(b13=i3).transpose()
    betas = [beta0]
    for k in (1, 2, 3):
        col = [-_I * e for e in K_BLOCK[k]]
        betas.append(_assemble(b23=S_BLOCK[k], b32=_neg(S_BLOCK[k]), c14=col, r41=col))
    alg = KemmerAlgebra(beta=tuple(betas))
    if verify:
        failures = [t for t in check_ring(alg)["triples"] if not t["ok"]]
        if failures:
            raise AssertionError(f"ring relation failed for {len(failures)} triples")
    return alg


def ring_defect(alg: KemmerAlgebra, lam: int, mu: int, nu: int) -> ExactMatrix:
    """LHS minus RHS of the ring relation for one index triple."""
    b = alg.beta
    lhs = b[lam] @ b[mu] @ b[nu] + b[nu] @ b[mu] @ b[lam]
    rhs = ExactMatrix.zeros(b[0].rows)
    if lam == mu:
        rhs = rhs + b[nu].scale(METRIC[lam])
    if mu == nu:
        rhs = rhs + b[lam].scale(METRIC[mu])
    return lhs - rhs


def check_ring(alg: KemmerAlgebra) -> dict:
    """Per-triple report of the three-term ring relation (64 entries)."""
    pair = [[alg.beta[m] @ alg.beta[n] for n in range(4)] for m in range(4)]
    triples = []
    for lam in range(4):
        for mu in range(4):
            for nu in range(4):
                lhs = alg.beta[lam] @ pair[mu][nu] + alg.beta[nu] @ pair[mu][lam]
                rhs = ExactMatrix.zeros(10)
                if lam == mu:
                    rhs = rhs + alg.beta[nu].scale(METRIC[lam])
                if mu == nu:
                    rhs = rhs + alg.beta[lam].scale(METRIC[mu])
                triples.append({"indices": (lam, mu, nu), "ok": lhs == rhs})
    return {"triples": triples, "ok": all(t["ok"] for t in triples)}


def check_ring_generic(mats, metric) -> dict:
    """Ring check for an arbitrary matrix family (negative-control helper)."""
    n = mats[0].rows
    triples = []
    for lam in range(len(mats)):
        for mu in range(len(mats)):
            for nu in range(len(mats)):
                lhs = mats[lam] @ mats[mu] @ mats[nu] + mats[nu] @ mats[mu] @ mats[lam]
                rhs = ExactMatrix.zeros(n)
                if lam == mu:
                    rhs = rhs + mats[nu].scale(metric[lam])
                if mu == nu:
                    rhs = rhs + mats[lam].scale(metric[mu])
                triples.append({"indices": (lam, mu, nu), "ok": lhs == rhs})
    return {"triples": triples, "ok": all(t["ok"] for t in triples)}


def _perm_sign(p) -> int:
    s = 1
    q = list(p)
    for a in range(len(q)):
        for b in range(a + 1, len(q)):
            if q[a] > q[b]:
                s = -s
    return s


def xi_mu(alg: KemmerAlgebra, mu: int) -> ExactMatrix:
    """Pseudo-vector spin operator (i/2) eps_{mu nu la rho} b^nu b^la b^rho.

    The epsilon symbol is normalized by eps_{3012} = +1 (the lowered-index
    tensor of eps^{0123} = +1 in this metric), which makes xi_3 equal the
    cyclic sum i (b^0 b^1 b^2 + b^1 b^2 b^0 + b^2 b^0 b^1).
    """
    others = [n for n in range(4) if n != mu]
    total = ExactMatrix.zeros(10)
    for perm in itertools.permutations(others):
        sgn = _perm_sign((mu,) + perm) * _perm_sign((3, 0, 1, 2))
        term = alg.beta[perm[0]] @ alg.beta[perm[1]] @ alg.beta[perm[2]]
        total = total + (term if sgn > 0 else -term)
    return total.scale(GaussianRational(0, Fraction(1, 2)))


def xi3_cyclic(alg: KemmerAlgebra) -> ExactMatrix:
    """The explicit cyclic form i(b0 b1 b2 + b1 b2 b0 + b2 b0 b1)."""
    b = alg.beta
    return (b[0] @ b[1] @ b[2] + b[1] @ b[2] @ b[0] + b[2] @ b[0] @ b[1]).scale(IUNIT)


@dataclass(frozen=True)
class SpinOperators:
    """Lorentz generators, spin matrices and the pseudo-vector operators.

    normalization is the coefficient b in S_{mu nu} = b(b_mu b_nu - b_nu b_mu),
    solved so that the beta.xi operator identities hold exactly (b = 2i for
    these matrices) rather than assumed.
    """

    s_munu: tuple
    sigma: tuple
    xi: tuple
    normalization: GaussianRational


def solve_normalization(alg: KemmerAlgebra) -> GaussianRational:
    """Fix b by solving beta_1 xi_3 = -(1/2) S_{02} beta_1^2 entrywise."""
    xi3 = xi3_cyclic(alg)
    lhs = alg.beta_lower(1) @ xi3
    base = commutator(alg.beta_lower(0), alg.beta_lower(2))  # S_{02} at b = 1
    rhs1 = (base @ (alg.beta_lower(1) @ alg.beta_lower(1))).scale(Fraction(-1, 2))
    for i in range(10):
        for j in range(10):
            if not rhs1.entry(i, j).is_zero():
                return lhs.entry(i, j) / rhs1.entry(i, j)
    raise AssertionError("degenerate identity; cannot solve for b")


def build_spin_operators(alg: KemmerAlgebra) -> SpinOperators:
    b_coeff = solve_normalization(alg)
    s_munu = tuple(
        tuple(commutator(alg.beta_lower(m), alg.beta_lower(n)).scale(b_coeff) for n in range(4))
        for m in range(4)
    )
    # Sigma_i = i eps_{ijk} [b_j, b_k] summed over j < k (the normalization
    # that makes Sigma_3 coincide with the 10x10 spin matrix S~3)
    sigma = []
    for i in (1, 2, 3):
        j, k = [a for a in (1, 2, 3) if a != i]
        sgn = _perm_sign((i, j, k)) * _perm_sign((1, 2, 3))
        term = commutator(alg.beta_lower(j), alg.beta_lower(k)).scale(GaussianRational(0, sgn))
        sigma.append(term)
    xi = tuple(xi_mu(alg, m) for m in range(4))
    if xi[3] != xi3_cyclic(alg):
        raise AssertionError("xi_3 must equal its cyclic form")
    return SpinOperators(s_munu=s_munu, sigma=tuple(sigma), xi=xi, normalization=b_coeff)


def stilde3() -> ExactMatrix:
    """The printed 10x10 spin matrix: S^3 on each vector block, 0 on the scalar."""
    return _assemble(diag3=(S_BLOCK[3], S_BLOCK[3], S_BLOCK[3]))


def beta0_xi3_block() -> ExactMatrix:
    """The printed evaluation of beta^0 xi_3: S^3 on blocks one and three."""
    return _assemble(diag3=(S_BLOCK[3], None, S_BLOCK[3]))


def xi3_printed_block() -> ExactMatrix:
    """The printed block form of xi_3 itself: S^3 couplings between blocks
    one and three, plus -i K^3-dagger and +i K^3 couplings to the scalar slot."""
    rows = [[0] * 10 for _ in range(10)]
    for i in range(3):
        for j in range(3):
            rows[i][6 + j] = S_BLOCK[3][i][j]
            rows[6 + i][j] = S_BLOCK[3][i][j]
    rows[5][9] = -_I   # (-i K^3 dagger) column in the second block
    rows[9][5] = _I    # (+i K^3) row against the second block
    return ExactMatrix.from_rows(rows)


def check_xi_commutators(alg: KemmerAlgebra, ops: SpinOperators):
    """[xi_3, beta^mu] = 0 exactly for mu in {0,1,2}; nonzero for mu = 3."""
    records = []
    for mu in range(4):
        c = commutator(ops.xi[3], alg.beta[mu])
        want_zero = mu != 3
        records.append({
            "name": f"[xi_3, beta^{mu}]",
            "is_zero": c.is_zero(),
            "ok": c.is_zero() == want_zero,
        })
    return records


def check_operator_identity_one(alg: KemmerAlgebra, ops: SpinOperators):
    """The two displayed beta.xi operator identities, with the solved b.

    For mu in {1,2} and nu the other planar index (eps_12 = +1):
        -beta^mu xi_3 = beta_mu xi_3 = -eps_{mu nu} (1/2) S_{0 nu} beta_mu^2,
    with S_{0 nu} and beta_mu^2 commuting, and the follow-up obtained by one
    more application of beta_mu:
        beta_mu (rhs) = +(1/2) eps_{mu nu} beta_mu S_{0 nu}.
    """
    records = []
    xi3 = ops.xi[3]
    half = Fraction(1, 2)
    for mu, nu, eps in ((1, 2, 1), (2, 1, -1)):
        bmu_low = alg.beta_lower(mu)
        bmu2 = bmu_low @ bmu_low
        s0n = ops.s_munu[0][nu]
        lhs = bmu_low @ xi3
        rhs = (s0n @ bmu2).scale(-eps * half)
        rhs_comm = (bmu2 @ s0n).scale(-eps * half)
        records.append({"name": f"identity one mu={mu}", "ok": lhs == rhs})
        records.append({"name": f"identity one (commuted) mu={mu}", "ok": lhs == rhs_comm})
        records.append({"name": f"-beta^mu xi3 == beta_mu xi3 mu={mu}",
                        "ok": (-alg.beta[mu]) @ xi3 == lhs})
        two_lhs = bmu_low @ rhs
        two_rhs = (bmu_low @ s0n).scale(eps * half)
        records.append({"name": f"identity two mu={mu}", "ok": two_lhs == two_rhs})
    return records


def effective_potential_spinone(e_field, mu: float) -> tuple:
    """(A'_1, A'_2) = (-2 mu E_2, +2 mu E_1) with E_3 = 0 enforced upstream."""
    e1, e2 = float(e_field[0]), float(e_field[1])
    return (-2.0 * mu * e2, 2.0 * mu * e1)


_EXACT_COMM_CACHE = {}


def _exact_comms(alg: KemmerAlgebra):
    key = id(alg)
    if key not in _EXACT_COMM_CACHE:
        _EXACT_COMM_CACHE[key] = (alg, {(a, b): commutator(alg.beta[a], alg.beta[b])
                                        for a in range(4) for b in range(4) if a != b})
    return _EXACT_COMM_CACHE[key][1]


def moment_interaction_exact(alg: KemmerAlgebra, f_upper, mu) -> ExactMatrix:
    """Commutator-form coupling i mu [b^a, b^b] F_{ab} as an exact matrix.

    f_upper is a 4x4 array-like of exact upper-index components F^{ab};
    lowering is done with the metric inside.
    """
    mu = GaussianRational.of(mu)
    comms = _exact_comms(alg)
    total = ExactMatrix.zeros(10)
    for (a, b), cab in comms.items():
        f_ab = GaussianRational.of(f_upper[a][b]) * (METRIC[a] * METRIC[b])
        if f_ab.is_zero():
            continue
        total = total + cab.scale(f_ab)
    return total.scale(IUNIT * mu)


_COMM_CACHE = {}


def _numeric_comms(alg: KemmerAlgebra):
    # keyed by id; the cache keeps the algebra alive so the id stays valid
    key = id(alg)
    if key not in _COMM_CACHE:
        _COMM_CACHE[key] = (alg, {(a, b): to_numeric(commutator(alg.beta[a], alg.beta[b]))
                                  for a in range(4) for b in range(a + 1, 4)})
    return _COMM_CACHE[key][1]


def moment_interaction(alg: KemmerAlgebra, field: FieldConfig, mu: float):
    """Pointwise numeric i mu [b^a, b^b] F_{ab}(x) as a function of the point."""
    comms = _numeric_comms(alg)

    def term(x):
        f = field_tensor(field.e_at(x), field.b_at(x))
        out = np.zeros((10, 10), dtype=complex)
        for (a, b), cab in comms.items():
            f_ab = f[a, b] * METRIC[a] * METRIC[b]
            out += 2j * mu * f_ab * cab  # (a,b) and (b,a) contribute equally
        return out

    return term


def boost_matrix(p, mass: float) -> np.ndarray:
    """Pure Lorentz boost taking (m, 0, 0, 0) to the four-momentum p."""
    p = np.asarray(p, dtype=float)
    gam = p[0] / mass
    l = np.eye(4)
    pv = p[1:]
    p2 = float(pv @ pv)
    if p2 > 0.0:
        beta_v = pv / p[0]
        b2 = float(beta_v @ beta_v)
        l[0, 0] = gam
        l[0, 1:] = gam * beta_v
        l[1:, 0] = gam * beta_v
        l[1:, 1:] = np.eye(3) + (gam - 1.0) / b2 * np.outer(beta_v, beta_v)
    return l


class KemmerPlaneWave:
    """Free 10-component plane wave phi(x) = u exp(-i p.x), p in the 1-2 plane.

    The column is built from the boosted spin-1 polarization through the
    component dictionary derived from the projection operators, and is an
    exact eigenvector of xi_3 with eigenvalue s3 for every in-plane momentum;
    at rest it is in addition an eigenvector of xi_3 beta^0 and of S~3.
    """

    def __init__(self, p, s3: int, column: np.ndarray, mass: float, polarization: np.ndarray):
        self.p = np.asarray(p, dtype=float)
        self.s3 = s3
        self.column = column
        self.mass = mass
        self.polarization = polarization

    def __call__(self, t, x1, x2):
        phase = np.exp(-1j * (self.p[0] * t - self.p[1] * x1 - self.p[2] * x2))
        return self.column * np.asarray(phase)[..., None]


def rest_polarization(s3: int) -> np.ndarray:
    """Spin-1 rest polarization with S_3 eigenvalue s3: psi^1 = -i s3 psi^2."""
    if s3 not in (+1, -1):
        raise ValueError("s3 must be +1 or -1 (the zero mode carries no phase)")
    return np.array([0.0, 1.0, 1j * s3, 0.0])


def kemmer_plane_wave(p, s3: int, alg: KemmerAlgebra, mass: float | None = None) -> KemmerPlaneWave:
    """Free Kemmer plane wave with xi_3 eigenvalue s3 and in-plane momentum."""
    from .proca import column_from_proca  # layout is fixed by the bridge module

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
    eps = boost_matrix(p, mass) @ rest_polarization(s3)
    g_amp = -1j * (np.outer(p, eps) - np.outer(eps, p))
    column = column_from_proca(eps, g_amp, mass)
    # construction checks: free equation and spin eigenvalue
    bnum = [to_numeric(b) for b in alg.beta]
    pslash = p[0] * bnum[0] - p[1] * bnum[1] - p[2] * bnum[2] - p[3] * bnum[3]
    if not np.allclose(pslash @ column, mass * column, atol=1e-11 * max(mass, 1.0)):
        raise AssertionError("column does not solve the free equation")
    xi3 = to_numeric(xi3_cyclic(alg))
    if not np.allclose(xi3 @ column, s3 * column, atol=1e-11):
        raise AssertionError("column is not a xi_3 eigenvector")
    return KemmerPlaneWave(p=p, s3=s3, column=column, mass=mass, polarization=eps)


_BETA_NUMERIC_CACHE = {}


def _numeric_betas(alg: KemmerAlgebra):
    key = id(alg)
    if key not in _BETA_NUMERIC_CACHE:
        _BETA_NUMERIC_CACHE[key] = (alg, [to_numeric(b) for b in alg.beta])
    return _BETA_NUMERIC_CACHE[key][1]


def kemmer_residual(phi: np.ndarray, field: FieldConfig, mu: float, mass: float,
                    h: float, origin, alg: KemmerAlgebra) -> float:
    """Max-norm finite-difference residual of the interacting Kemmer equation.

    Same grid protocol as the Dirac residual: (3, n, n, 10) samples, central
    differences, interior points of the t = 0 slice.
    """
    bnum = _numeric_betas(alg)
    return first_order_residual(phi, bnum[:3], mass, moment_interaction(alg, field, mu),
                                h, origin, field)
