import math

import numpy as np
import pytest

from acphase.exact import to_numeric
from acphase.fields import FieldConfig, LoopPath
from acphase.kemmer import kemmer_plane_wave, xi3_cyclic
from acphase.phase import (
    GridSpec,
    PhaseAnsatz,
    coupling_factor,
    curly_f,
    measured_loop_phase,
    predicted_phase,
    spin_ratio_experiment,
    verify_ansatz_dirac,
    verify_ansatz_kemmer,
    verify_ansatz_proca,
)


LINE = FieldConfig.line_charge(1.0)
UNIFORM = FieldConfig.uniform_e(0.0, 0.7)


def test_predicted_phase_values():
    assert predicted_phase("one", 0.5, 1.0, +1) == 1.0
    assert predicted_phase("half", 0.5, 1.0, +1) == 0.5
    assert predicted_phase("one", 0.3, 0.0, +1) == 0.0
    assert predicted_phase("half", 0.3, 0.0, -1) == 0.0
    assert predicted_phase("one", 0.5, 1.0, 0) == 0.0  # zero mode: zero phase


def test_predicted_phase_rejections():
    with pytest.raises(ValueError):
        predicted_phase("half", 0.5, 1.0, 0)
    with pytest.raises(ValueError):
        predicted_phase("scalar", 0.5, 1.0, 1)


def test_measured_matches_predicted_on_circle():
    for spin, s in (("one", +1), ("one", -1), ("half", +1), ("half", -1)):
        ansatz = PhaseAnsatz(spin, s, 0.5, LINE)
        measured = measured_loop_phase(ansatz, LoopPath.circle(radius=1.0), tol=1e-9)
        assert measured == pytest.approx(predicted_phase(spin, 0.5, 1.0, s), abs=1e-7)


def test_topological_invariance_three_shapes():
    ansatz = PhaseAnsatz("one", +1, 0.5, LINE)
    shapes = [LoopPath.circle(radius=1.0), LoopPath.square(half=0.7),
              LoopPath.triangle(radius=1.1)]
    values = [measured_loop_phase(ansatz, p, tol=1e-9) for p in shapes]
    for v in values:
        assert v == pytest.approx(1.0, abs=2e-9)


def test_null_result_winding_zero():
    ansatz = PhaseAnsatz("one", +1, 0.5, LINE)
    off = LoopPath.circle(center=(3.0, 0.0), radius=0.4)
    assert off.winding_number() == 0
    assert measured_loop_phase(ansatz, off, tol=1e-9) == pytest.approx(0.0, abs=2e-9)


def test_sign_covariance_in_s():
    path = LoopPath.circle(radius=1.0)
    plus = measured_loop_phase(PhaseAnsatz("one", +1, 0.5, LINE), path, tol=1e-10)
    minus = measured_loop_phase(PhaseAnsatz("one", -1, 0.5, LINE), path, tol=1e-10)
    assert minus == -plus  # exact at the quadrature level: the integrand is s-linear


def test_zero_mode_measures_zero_phase():
    path = LoopPath.circle(radius=1.0)
    zero = measured_loop_phase(PhaseAnsatz("one", 0, 0.5, LINE), path, tol=1e-10)
    assert zero == 0.0


def test_winding_two_doubles_phase():
    path2 = LoopPath.circle(radius=1.0, winding=2)
    val = measured_loop_phase(PhaseAnsatz("one", +1, 0.5, LINE), path2, tol=1e-9)
    assert val == pytest.approx(2.0, abs=4e-9)


def test_spin_ratio_experiment():
    path = LoopPath.circle(radius=1.0)
    assert spin_ratio_experiment(0.5, 1.0, path) == pytest.approx(2.0, abs=1e-6)
    assert spin_ratio_experiment(0.1, 3.0, path) == pytest.approx(2.0, abs=1e-6)
    path2 = LoopPath.circle(radius=1.0, winding=2)
    assert spin_ratio_experiment(0.5, 1.0, path2) == pytest.approx(2.0, abs=1e-6)


def test_spin_ratio_degenerate_rejected():
    with pytest.raises(ValueError):
        spin_ratio_experiment(0.5, 0.0, LoopPath.circle(radius=1.0))


def test_ansatz_validation():
    with pytest.raises(ValueError):
        PhaseAnsatz("half", 0, 0.5, LINE)
    with pytest.raises(ValueError):
        PhaseAnsatz("two", 1, 0.5, LINE)
    assert coupling_factor("one", 0.5) == 1.0
    assert coupling_factor("half", 0.5) == 0.5


def test_chi_gradient_matches_a_prime():
    ansatz = PhaseAnsatz("one", +1, 0.5, LINE, base_point=(1.0, 0.2))
    h = 1e-5
    for pt in ((1.1, 0.3), (0.9, -0.2), (1.3, 0.1)):
        gx = (ansatz.chi((pt[0] + h, pt[1])) - ansatz.chi((pt[0] - h, pt[1]))) / (2 * h)
        gy = (ansatz.chi((pt[0], pt[1] + h)) - ansatz.chi((pt[0], pt[1] - h))) / (2 * h)
        a = ansatz.a_prime(pt)
        assert gx == pytest.approx(a[0], abs=1e-8)
        assert gy == pytest.approx(a[1], abs=1e-8)


def test_chi_path_independence():
    # same endpoint through two different creases in the cut plane
    ansatz = PhaseAnsatz("one", +1, 0.5, LINE, base_point=(1.0, 0.0))
    from acphase.fields import open_path_integral
    direct = ansatz.chi((1.4, 0.7))
    dogleg = open_path_integral(ansatz.a_prime, [(1.0, 0.0), (1.4, 0.0), (1.4, 0.7)])
    assert direct == pytest.approx(dogleg, abs=1e-8)


def test_operator_exponent_reduces_to_scalar_dirac(dirac_alg, phase_op):
    # (gamma5 gamma3)^2 = 1, so exp(i theta W) = cos theta + i sin theta W;
    # on an eigenstate this is exactly the scalar phase e^{i s theta}
    from acphase.dirac import free_plane_wave_dirac
    w = to_numeric(phase_op.w_operator)
    theta = 0.9
    expw = math.cos(theta) * np.eye(4) + 1j * math.sin(theta) * w
    for s in (+1, -1):
        u = free_plane_wave_dirac([1.0, 0.0, 0.0, 0.0], s, dirac_alg, mass=1.0).spinor
        assert np.allclose(expw @ u, np.exp(1j * s * theta) * u)


def test_operator_exponent_reduces_to_scalar_kemmer(kemmer_alg):
    # xi_3 has spectrum {0, +-1}: exp(i theta xi3) = 1 + i sin(theta) xi3
    #                                               + (cos(theta) - 1) xi3^2
    xi3 = to_numeric(xi3_cyclic(kemmer_alg))
    theta = 1.3
    expx = np.eye(10) + 1j * math.sin(theta) * xi3 + (math.cos(theta) - 1.0) * (xi3 @ xi3)
    for s3 in (+1, -1):
        u = kemmer_plane_wave([1.25, 0.75, 0.0, 0.0], s3, kemmer_alg, mass=1.0).column
        assert np.allclose(expx @ u, np.exp(1j * s3 * theta) * u)


def test_verify_dirac_uniform(dirac_alg):
    ansatz = PhaseAnsatz("half", +1, 0.33, UNIFORM, base_point=(0.3, 0.4))
    rep = verify_ansatz_dirac(ansatz, GridSpec((0.3, 0.4), 9, 0.02), dirac_alg,
                              momentum=(0.5, 0.3))
    assert rep.passed, rep.checks


def test_verify_dirac_line_charge(dirac_alg):
    ansatz = PhaseAnsatz("half", -1, 0.5, LINE, base_point=(0.8, 0.1))
    rep = verify_ansatz_dirac(ansatz, GridSpec((0.8, 0.1), 9, 0.004), dirac_alg,
                              momentum=(0.4, 0.2))
    assert rep.passed, rep.checks


def test_verify_dirac_rejects_b_field(dirac_alg):
    bad = FieldConfig.custom(lambda x: np.array([0.0, 0.5, 0.0]),
                             lambda x: np.array([0.0, 0.0, 1.0]))
    ansatz = PhaseAnsatz("half", +1, 0.33, bad)
    with pytest.raises(ValueError):
        verify_ansatz_dirac(ansatz, GridSpec((0.3, 0.4), 9, 0.02), dirac_alg)


def test_verify_dirac_rejects_wrong_spin(dirac_alg):
    ansatz = PhaseAnsatz("one", +1, 0.33, UNIFORM)
    with pytest.raises(ValueError):
        verify_ansatz_dirac(ansatz, GridSpec((0.3, 0.4), 9, 0.02), dirac_alg)


def test_verify_kemmer_uniform_both_signs(kemmer_alg, spin_ops):
    for s3 in (+1, -1):
        ansatz = PhaseAnsatz("one", s3, 0.33, UNIFORM, base_point=(0.3, 0.4))
        rep = verify_ansatz_kemmer(ansatz, GridSpec((0.3, 0.4), 9, 0.02), kemmer_alg,
                                   spin_ops, momentum=(0.5, 0.3))
        assert rep.passed, [c for c in rep.checks if c["status"] != "pass"]


def test_verify_kemmer_rejects_zero_mode(kemmer_alg, spin_ops):
    ansatz = PhaseAnsatz("one", 0, 0.33, UNIFORM)
    with pytest.raises(ValueError):
        verify_ansatz_kemmer(ansatz, GridSpec((0.3, 0.4), 9, 0.02), kemmer_alg, spin_ops)


def test_verify_proca_uniform(kemmer_alg):
    ansatz = PhaseAnsatz("one", +1, 0.33, UNIFORM, base_point=(0.3, 0.4))
    rep = verify_ansatz_proca(ansatz, GridSpec((0.3, 0.4), 9, 0.02))
    assert rep.passed, [c for c in rep.checks if c["status"] != "pass"]


def test_verify_proca_line_charge(kemmer_alg):
    ansatz = PhaseAnsatz("one", -1, 0.5, LINE, base_point=(0.8, 0.1))
    rep = verify_ansatz_proca(ansatz, GridSpec((0.8, 0.1), 9, 0.004))
    assert rep.passed, [c for c in rep.checks if c["status"] != "pass"]


def test_curly_f_vanishing_spatial_part_on_rest_states(kemmer_alg):
    # with B = E3 = 0 and psi^0 = psi^3 = 0 the interaction vector is purely temporal
    from acphase.kemmer import rest_polarization
    psi = rest_polarization(+1)
    cf = curly_f(UNIFORM, (0.4, 0.6), psi)
    assert np.all(cf[1:] == 0)
    e = UNIFORM.e_at((0.4, 0.6))
    assert cf[0] == pytest.approx(e[0] * psi[1] + e[1] * psi[2])


def test_grid_refined_shares_extent():
    g = GridSpec((0.3, 0.4), 9, 0.02)
    r = g.refined()
    assert r.h == 0.01 and r.n == 17
    assert (g.n - 1) * g.h == pytest.approx((r.n - 1) * r.h)
