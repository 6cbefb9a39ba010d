from __future__ import annotations

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallgaps import constants as ck
from smallgaps.common import DomainError


# --- log_gamma -----------------------------------------------------------------


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (0.5, 0.5 * math.log(math.pi)), (5.0, math.log(24.0)), (2.0, 0.0)],
)
def test_log_gamma_examples(x, expected):
    assert ck.log_gamma(x) == pytest.approx(expected, abs=1e-14)


@settings(max_examples=400, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e6, allow_nan=False))
def test_log_gamma_matches_mpmath(x):
    ref = float(mpmath.loggamma(mpmath.mpf(x)))
    # error measured against max(1, |ln Gamma|): near the roots x = 1, 2 a
    # purely relative bound is meaningless in double precision
    assert abs(ck.log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_log_gamma_grid_against_stdlib():
    worst = 0.0
    x = 1e-3
    while x < 1e6:
        ref = math.lgamma(x)
        worst = max(worst, abs(ck.log_gamma(x) - ref) / max(1.0, abs(ref)))
        x *= 1.013
    assert worst < 1e-13


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_log_gamma_domain(bad):
    with pytest.raises(DomainError):
        ck.log_gamma(bad)


# --- normalisations and special integrals -----------------------------------------


def test_log_c_beta_n_examples():
    assert ck.log_c_beta_n(2, 1) == pytest.approx(math.log(2 * math.pi), rel=1e-14)
    assert ck.log_c_beta_n(2, 2) == pytest.approx(math.log(8 * math.pi**2), rel=1e-14)
    assert ck.log_c_beta_n(1, 2) == pytest.approx(math.log(16 * math.pi), rel=1e-14)


def test_log_c_beta_n_large_n_is_finite():
    assert math.isfinite(ck.log_c_beta_n(4, 10**6))


def test_log_c_beta_n_rejects_real_beta():
    with pytest.raises(DomainError):
        ck.log_c_beta_n(2.0, 3)


def test_morris_examples():
    assert ck.log_morris(0, 1.3, 0.2, 0.7) == 0.0
    for lam in (0.3, 0.5, 1.0, 2.5):
        assert math.exp(ck.log_morris(1, 1, 1, lam)) == pytest.approx(2.0, rel=1e-13)
    assert math.exp(ck.log_morris(2, 0, 0, 1)) == pytest.approx(2.0, rel=1e-13)


def test_morris_domain():
    with pytest.raises(DomainError):
        ck.log_morris(1, -1.0, -0.5, 1.0)
    with pytest.raises(DomainError):
        ck.log_morris(1, 1.0, 1.0, 0.0)


def test_selberg_examples():
    assert math.exp(ck.log_selberg(1, 0, 0, 0.7)) == pytest.approx(1.0, rel=1e-14)
    assert math.exp(ck.log_selberg(1, 1, 1, 0.7)) == pytest.approx(1 / 6, rel=1e-13)
    assert math.exp(ck.log_selberg(2, 0, 0, 1)) == pytest.approx(1 / 6, rel=1e-13)


def test_selberg_domain():
    with pytest.raises(DomainError):
        ck.log_selberg(2, -1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        ck.log_selberg(2, 0.0, 0.0, -0.5)


def test_c_charge_unit_charge_is_exact():
    for beta in (1, 2, 3, 5):
        for n1 in (0, 1, 7, 40):
            assert ck.log_c_charge(beta, n1, 1) == ck.log_c_beta_n(beta, n1 + 1)


def test_c_charge_matches_morris_form():
    # independent route: (2 pi)^(n1+1) M_{n1}(k beta/2, k beta/2, beta/2)
    for beta in (1, 2, 4):
        for n1 in (0, 1, 3, 12, 60):
            for k in (2, 3, 4):
                morris = (n1 + 1) * math.log(2 * math.pi) + ck.log_morris(n1, k * beta / 2, k * beta / 2, beta / 2)
                assert ck.log_c_charge(beta, n1, k) == pytest.approx(morris, rel=1e-12, abs=1e-12)


def test_c_charge_example():
    assert math.exp(ck.log_c_charge(2, 1, 2)) == pytest.approx((2 * math.pi) ** 2 * 6, rel=1e-13)


# --- limit constants -------------------------------------------------------------


@pytest.mark.parametrize(
    "beta, expected", [(1, 1 / 24), (2, 1 / (24 * math.pi)), (4, 1 / (270 * math.pi))]
)
def test_a_beta_reference_values(beta, expected):
    assert ck.a_beta(beta) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("beta", range(1, 9))
def test_a_beta_k_relations(beta):
    assert ck.a_beta_k(beta, 1) == pytest.approx(1.0, rel=1e-12)
    assert ck.a_beta_k(beta, 2) == pytest.approx(ck.a_beta(beta), rel=1e-12)


def test_j_n_beta_examples():
    assert ck.log_j_n_beta(1, 2, 1.0) == pytest.approx(0.0, abs=1e-14)
    assert ck.log_j_n_beta(2, 2, 1.0) == pytest.approx(math.log(2.0), rel=1e-13)
    assert ck.log_j_n_beta(1, 2, 2.0) == pytest.approx(math.log(0.5), rel=1e-13)


@pytest.mark.parametrize("n, beta", [(1, 1), (2, 3), (4, 2), (3, 5)])
def test_j_n_beta_scaling(n, beta):
    base = ck.log_j_n_beta(n, beta)
    for z in (0.5, 1.0, 2.0):
        assert ck.log_j_n_beta(n, beta, z) + 2 * n * n / beta * math.log(z) == pytest.approx(base, rel=1e-13, abs=1e-13)


def test_log_binomial_exact():
    for n in range(0, 17):
        for k in range(0, n + 1):
            assert math.exp(ck.log_binomial(n, k)) == pytest.approx(math.comb(n, k), rel=1e-14)


@pytest.mark.parametrize("beta", range(1, 9))
def test_gamma_product_identity_residual(beta):
    assert abs(ck.lemma5_residual(beta)) <= 1e-10


def test_charge_ratio_bound_grid():
    for beta in range(1, 7):
        for k in (1, 2, 3):
            bound = ck.log_lemma7_bound(beta, k)
            for n in range(k + 1, 51):
                assert ck.log_lemma7_ratio(beta, n, k) - bound <= 1e-12


def test_charge_ratio_convergence():
    a = 1 / 24
    devs = [abs(ck.lemma7_ratio(1, n, 2) - a) for n in (10**2, 10**3, 10**4)]
    assert devs[0] > devs[1] > devs[2]
    assert ck.lemma7_ratio(2, 10**4, 2) == pytest.approx(ck.a_beta(2), rel=0.01)


def test_charge_ratio_domain():
    with pytest.raises(DomainError):
        ck.lemma7_ratio(2, 3, 3)
