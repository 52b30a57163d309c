import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nullstate import (
    DomainError,
    OneIntervalGreen,
    PreconditionError,
    TwoIntervalGreen,
    delta_minus,
    eigenvalue,
    kpz,
    leg_weight,
)


def test_j_spot_value():
    g = OneIntervalGreen(weight=leg_weight(1, 6.0), kappa=6.0)
    assert g.value(0.5, 1.0) == pytest.approx(2.0 * (1.0 - 2.0 ** (-1.0 / 3.0)), rel=1e-14)


def test_j_zero_at_coincidence_and_causality():
    g = OneIntervalGreen(weight=leg_weight(2, 4.0), kappa=4.0)
    assert g.value(1.0, 1.0) == 0.0
    assert g.value(2.0, 1.0) == 0.0


@settings(max_examples=100, deadline=None)
@given(
    kappa=st.floats(min_value=0.5, max_value=7.8),
    delta=st.floats(min_value=1e-6, max_value=5.0),
    eta=st.floats(min_value=1e-6, max_value=5.0),
)
def test_j_nonnegative(kappa, delta, eta):
    g = OneIntervalGreen(weight=leg_weight(1, kappa), kappa=kappa)
    assert g.value(delta, eta) >= 0.0


@pytest.mark.parametrize("kappa", (10.0 / 3.0, 6.0, 0.5, 7.9))
def test_coincidence_slope(kappa):
    g = OneIntervalGreen(weight=leg_weight(1, kappa), kappa=kappa)
    for eta in (0.3, 1.0, 2.0):
        assert g.slope(eta * (1.0 - 1e-14), eta) == pytest.approx(-4.0 / kappa, rel=1e-10)
        assert abs(g.coincidence_slope_fd(eta) - (-4.0 / kappa)) <= 1e-8


def test_euler_coefficient_identity():
    # kappa/4 * gap(gap-1) + (kappa dm/2 + 1) gap = 0, by Vieta on the exponents
    for kappa in (0.5, 2.0, 10.0 / 3.0, 6.0, 7.9):
        for s in (1, 2):
            pair = kpz(leg_weight(s, kappa), kappa)
            g = pair.gap
            val = kappa / 4.0 * g * (g - 1.0) + (kappa * pair.delta_minus / 2.0 + 1.0) * g
            assert abs(val) <= 1e-11


@pytest.mark.parametrize("kappa", (10.0 / 3.0, 6.0))
@pytest.mark.parametrize("s", (1, 2))
def test_j_annihilation(kappa, s):
    g = OneIntervalGreen(weight=leg_weight(s, kappa), kappa=kappa)
    for eta in (0.7, 1.3):
        deltas = np.linspace(0.05, 0.95, 12) * eta
        assert g.annihilation_residual(eta, deltas) <= 1e-9
        assert g.annihilation_residual(eta, deltas, method="fd") <= 1e-9


def test_j_annihilation_rejects_bad_grid():
    g = OneIntervalGreen(weight=leg_weight(1, 4.0), kappa=4.0)
    with pytest.raises(PreconditionError):
        g.annihilation_residual(1.0, [0.5, 1.5])


@pytest.fixture(params=[(6.0, 2), (10.0 / 3.0, 2), (16.0 / 3.0, 3)],
                ids=lambda p: f"k{p[0]:g}-s{p[1]}")
def green(request):
    kappa, s = request.param
    return TwoIntervalGreen(h=leg_weight(s, kappa), kappa=kappa)


def test_g_causality_exact(green):
    assert green.value(0.3, 1.0, 0.6, 0.5) == 0.0
    assert green.value(0.3, 1.0, 0.6, 1.0) == 0.0


def test_g_domain_errors(green):
    with pytest.raises(DomainError):
        green.value(0.0, 1.0, 0.5, 2.0)
    with pytest.raises(DomainError):
        green.value(0.5, -1.0, 0.5, 2.0)


def test_series_vs_factored(green):
    for pt in [(0.3, 0.5, 0.6, 1.0), (0.5, 0.2, 0.5, 0.5), (0.8, 1.0, 0.25, 3.0)]:
        a = green.value(*pt)
        b = green.value_series(*pt)
        assert abs(a - b) <= 1e-10 * abs(a)


def test_adjoint_residual_homogeneous(green):
    worst = 0.0
    for sigma in np.linspace(0.2, 0.8, 5):
        for ratio in (1.5, 2.5, 4.0):
            rep = green.adjoint_residual(0.4, 0.5, float(sigma), 0.5 * ratio)
            worst = max(worst, rep.relative)
    assert worst <= 1e-4


def test_adjoint_requires_homogeneous_region(green):
    with pytest.raises(PreconditionError):
        green.adjoint_residual(0.4, 1.0, 0.5, 0.8)


def test_sigma_eigenfunction_residual(green):
    sigmas = np.linspace(0.08, 0.92, 11)
    for n in (0, 1, 2, 5, 8):
        assert green.eigenfunction(n).equation_residual(sigmas) <= 1e-6


def test_eigenfunction_derivatives_match_fd(green):
    eig = green.eigenfunction(3)
    h = 1e-6
    for sigma in (0.3, 0.55, 0.8):
        v, d1, d2 = eig.derivatives(sigma)
        assert v == pytest.approx(eig.value(sigma), rel=1e-12)
        fd1 = (eig.value(sigma + h) - eig.value(sigma - h)) / (2 * h)
        assert d1 == pytest.approx(fd1, rel=1e-7, abs=1e-9)


def test_boundary_exponents(green):
    left = green.boundary_exponent_fit("left", rho=0.4, epsilon=0.5, eta=1.0)
    right = green.boundary_exponent_fit("right", rho=0.4, epsilon=0.5, eta=1.0)
    assert abs(left - green.exp_left) <= 1e-2
    assert abs(right - green.exp_right) <= 1e-2


def test_reproducing_limit_pure_mode(green):
    # f with the exact boundary powers reduces to mass conservation, so the
    # value is (eps/eta)^lambda0 f(rho) at every eta
    f = lambda s: s**green.dp_1 * (1.0 - s) ** green.dp_h
    eps = 0.5
    etas = eps * np.exp(4.0 * np.array([0.3, 0.1, 0.03, 0.01]) / green.kappa)
    rec = green.reproducing_limit(0.5, eps, f, etas)
    for value, eta in zip(rec.values, rec.etas):
        assert value == pytest.approx((eps / eta) ** green.lambda0 * rec.target, abs=1e-9)
    assert np.all(np.diff(rec.errors) < 0.0)


def test_reproducing_limit_first_order_rate(green):
    f = lambda s: s ** (green.dp_1 + 1.0) * (1.0 - s) ** green.dp_h
    eps = 0.5
    ts = np.array([4e-2, 2e-2, 1e-2, 5e-3])
    etas = eps * np.exp(4.0 * ts / green.kappa)
    rec = green.reproducing_limit(0.5, eps, f, etas)
    errs = rec.errors
    # halving t roughly halves the error (first-order rate)
    rates = errs[:-1] / errs[1:]
    assert np.all(rates > 1.5)
    assert np.all(rates < 3.0)


def test_reproducing_limit_small_t_value():
    g = TwoIntervalGreen(h=leg_weight(2, 6.0), kappa=6.0)
    f = lambda s: s**g.dp_1 * (1.0 - s) ** g.dp_h
    eps = 0.5
    eta = eps * math.exp(4.0 * 1e-3 / 6.0)
    rec = g.reproducing_limit(0.5, eps, f, [eta])
    assert rec.errors[0] <= 1e-3


def test_reproducing_rejects_divergent_transform(green):
    with pytest.raises(PreconditionError):
        green.reproducing_limit(0.5, 0.5, lambda s: 1.0, [0.6])


def test_lambda0_override_breaks_agreement():
    kappa, h = 6.0, leg_weight(2, 6.0)
    lam0 = eigenvalue(0, h, kappa)
    g = TwoIntervalGreen(h=h, kappa=kappa, lambda0=lam0 + 1e-6)
    a = g.value(0.3, 0.5, 0.6, 1.0)
    b = g.value_series(0.3, 0.5, 0.6, 1.0)
    assert abs(a - b) > 1e-10 * abs(a)
