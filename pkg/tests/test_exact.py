import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acphase.exact import (
    ExactMatrix,
    GaussianRational,
    anticommutator,
    bch_conjugate,
    char_poly,
    commutator,
    eigencolumn_residual,
    mat_mul,
    to_numeric,
)
from acphase.kemmer import S_BLOCK, build_betas, xi3_cyclic

from _oracles import naive_mat_mul

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=8)
gaussians = st.builds(GaussianRational, rationals, rationals)


def exact_s(k):
    return ExactMatrix.from_rows(S_BLOCK[k])


@given(gaussians, gaussians, gaussians)
def test_scalar_field_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + GaussianRational(0) == a
    assert a * GaussianRational(1) == a


@given(gaussians)
def test_scalar_division_inverts(a):
    if not a.is_zero():
        assert (a / a) == GaussianRational(1)
        assert a * (GaussianRational(1) / a) == GaussianRational(1)


def test_scalar_canonical_fields():
    x = GaussianRational(Fraction(2, 4), Fraction(-3, 6))
    assert (x.re_num, x.re_den) == (1, 2)
    assert (x.im_num, x.im_den) == (-1, 2)
    assert x.re_den > 0 and x.im_den > 0


def small_matrices(n=3):
    entries = st.lists(gaussians, min_size=n * n, max_size=n * n)
    return entries.map(lambda e: ExactMatrix(n, n, e))


@settings(max_examples=30)
@given(small_matrices(), small_matrices(), small_matrices())
def test_matmul_associativity(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@settings(max_examples=30)
@given(small_matrices(), small_matrices())
def test_commutator_antisymmetry(a, b):
    assert commutator(a, b) == -commutator(b, a)


@settings(max_examples=20)
@given(small_matrices(), small_matrices())
def test_matmul_against_naive_oracle(a, b):
    assert a @ b == naive_mat_mul(a, b)


def test_matmul_identity_case():
    s3 = exact_s(3)
    assert mat_mul(ExactMatrix.identity(3), s3) == s3


def test_s1_squared_frozen():
    # hand multiplication of the printed 3x3 block: S^1 S^1 = diag(0, 1, 1)
    expected = ExactMatrix.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert exact_s(1) @ exact_s(1) == expected


def test_beta0_cubed_is_beta0():
    alg = build_betas(verify=False)
    b0 = alg.beta[0]
    assert naive_mat_mul(naive_mat_mul(b0, b0), b0) == b0
    assert b0 @ b0 @ b0 == b0


def test_commutator_of_spin_blocks():
    # [S^3, S^1] = i S^2, the angular-momentum relation of the printed blocks
    lhs = commutator(exact_s(3), exact_s(1))
    assert lhs == exact_s(2).scale(GaussianRational(0, 1))


def test_commutator_self_is_zero():
    s = exact_s(2)
    assert commutator(s, s).is_zero()


def test_anticommutator_runs():
    s = exact_s(1)
    assert anticommutator(s, -s) == (s @ s).scale(-2)


def test_dimension_mismatch_errors():
    a = ExactMatrix.zeros(2, 3)
    b = ExactMatrix.zeros(2, 3)
    with pytest.raises(ValueError):
        a @ b
    with pytest.raises(ValueError):
        commutator(a, b)
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, [1, 2, 3])


def test_bch_order_zero_returns_g():
    x, g = exact_s(1), exact_s(2)
    assert bch_conjugate(x, g, 0) == g


@settings(max_examples=20)
@given(small_matrices(), st.integers(min_value=0, max_value=5))
def test_bch_commuting_case_is_identity(a, order):
    # x commutes with itself and with polynomials in itself
    g = a @ a
    assert bch_conjugate(a, g, order) == g


def test_bch_xi3_beta3_order2_has_corrections():
    alg = build_betas(verify=False)
    xi3 = xi3_cyclic(alg)
    b3 = alg.beta[3]
    # oracle: exact nested commutators assembled by hand
    c1 = naive_mat_mul(xi3, b3) - naive_mat_mul(b3, xi3)
    c2 = naive_mat_mul(xi3, c1) - naive_mat_mul(c1, xi3)
    minus_i = GaussianRational(0, -1)
    expected = b3 + c1.scale(minus_i) + c2.scale(minus_i * minus_i * Fraction(1, 2))
    got = bch_conjugate(xi3, b3, 2)
    assert got == expected
    assert not (got - b3).is_zero()


def test_to_numeric_zero_and_entries():
    z = ExactMatrix.zeros(3)
    assert np.all(to_numeric(z) == 0)
    alg = build_betas(verify=False)
    b0 = to_numeric(alg.beta[0])
    assert set(np.unique(b0.real)) == {0.0, 1.0}
    assert np.all(b0.imag == 0)
    assert np.count_nonzero(b0) == 6


def test_to_numeric_dyadic_is_exact():
    m = ExactMatrix.from_rows([[Fraction(3, 8), Fraction(-5, 4)], [Fraction(1, 2), 7]])
    num = to_numeric(m)
    assert num[0, 0] == 0.375 and num[0, 1] == -1.25 and num[1, 0] == 0.5


def test_to_numeric_third_within_ulp():
    m = ExactMatrix.from_rows([[Fraction(1, 3)]])
    val = to_numeric(m)[0, 0].real
    assert abs(val - 1.0 / 3.0) <= math.ulp(1.0 / 3.0)


def test_char_poly_of_spin_block():
    # S^3 has eigenvalues {+1, -1, 0}: char poly lambda^3 - lambda
    coeffs = char_poly(exact_s(3))
    assert coeffs == [GaussianRational(1), GaussianRational(0),
                      GaussianRational(-1), GaussianRational(0)]


def test_eigencolumn_residual():
    s3 = exact_s(3)
    vec = (1, GaussianRational(0, 1), 0)  # (1, i, 0) has S^3 eigenvalue +1
    assert all(e.is_zero() for e in eigencolumn_residual(s3, vec, 1))
    assert not all(e.is_zero() for e in eigencolumn_residual(s3, vec, -1))


def test_check_numeric_guards_non_finite():
    from acphase.exact import check_numeric

    ok = check_numeric(np.array([[1.0 + 2.0j, 0.5]]))
    assert ok.dtype == np.complex128
    with pytest.raises(ValueError):
        check_numeric(np.array([[np.inf, 0.0]]))
    with pytest.raises(ValueError):
        check_numeric(np.array([[np.nan + 1j, 0.0]]))
