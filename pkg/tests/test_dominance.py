import numpy as np
import pytest
from scipy import integrate
from scipy.stats import norm

from distorted_sd import (
    GP,
    Identity,
    Method,
    NotApplicableError,
    PhiM,
    Power,
    check_fsd,
    check_hdsd,
    check_icx,
    check_mixed,
    check_risk_loving_hdsd,
    check_ssd,
    check_t3_shortcut,
    constant,
    detect_single_crossing,
    discrete,
    dual,
    gap_curve,
    logistic,
    negate,
    normal,
    uniform,
)

SKEW_X = discrete([1, 3, 6], [0.5, 0.25, 0.25])
SKEW_Y = discrete([0, 2, 4, 5])
# Pair whose gap curves are unchanged under (X, Y) -> (-Y, -X), so both risk sides agree.
SYM_X = discrete([1, 2, 4])
SYM_Y = discrete([0, 2.5, 3])


def skew_closed_form(u, k):
    if u <= 0.25:
        return u ** k
    if u <= 0.75:
        return 2 ** (1 - 2 * k) - u ** k
    return u ** k - 2 ** (1 - 2 * k) * (3 ** k - 1)


@pytest.mark.parametrize("k", [0.3, 0.63, 1.0, 2.0, 5.0])
def test_skewed_pair_gap_curve_matches_piecewise_form(k):
    us = np.array([0.1, 0.25, 0.5, 0.75, 0.9, 1.0])
    curve = gap_curve(SKEW_X, SKEW_Y, Power(k), us)
    np.testing.assert_allclose(curve.ds, [skew_closed_form(u, k) for u in us], atol=1e-14)


def test_skewed_pair_verdicts():
    v = check_ssd(SKEW_X, SKEW_Y)
    assert not v.holds and v.min_gap == pytest.approx(-0.25) and v.witness == pytest.approx(0.75)
    assert check_hdsd(SKEW_X, SKEW_Y, Power(0.63)).holds
    assert not check_hdsd(SKEW_X, SKEW_Y, Power(0.64)).holds
    assert check_hdsd(SKEW_X, SKEW_Y, Power(0.63)).method is Method.EXACT_BREAKPOINT


def test_fsd_examples():
    assert check_fsd(SKEW_X, SKEW_X).holds
    assert check_fsd(constant(1.0), uniform()).holds
    assert not check_fsd(SYM_X, SYM_Y).holds
    assert not check_fsd(SYM_X, discrete([0, 2, 5, 3])).holds
    assert not check_fsd(normal(1, 1), normal(0, 2)).holds
    assert check_fsd(normal(1, 2), normal(0, 2)).holds


def test_gap_curve_identity_pair_is_zero():
    for d in (SKEW_X, normal(0.3, 2.0), uniform(-1, 1)):
        for h in (Identity(), Power(3.0), PhiM(2.0)):
            assert np.max(np.abs(gap_curve(d, d, h).ds)) < 1e-12


def test_constant_vs_uniform_gap_curves():
    c, u = constant(0.8), uniform()
    for k in (1, 2, 3, 4):
        assert np.min(gap_curve(c, u, Power(k)).ds) >= -1e-12
    assert np.min(gap_curve(c, u, Power(5)).ds) < 0
    # D(u) = c u^k - k u^(k+1) / (k + 1) in closed form
    us = np.linspace(0, 1, 11)
    for k in (0.5, 4.5):
        ref = 0.8 * us ** k - k * us ** (k + 1) / (k + 1)
        np.testing.assert_allclose(gap_curve(c, u, Power(k), us).ds, ref, atol=1e-12)


@pytest.mark.parametrize("h", [Power(1.0), Power(2.5), PhiM(2.0), dual(Power(2.0))])
def test_mixed_pair_quadrature_matches_scipy(h):
    """Discrete vs continuous gap curve against an independent quad of (Q_X - Q_Y) H'."""
    x, y = SKEW_X, uniform(0.0, 5.5)
    us = np.array([0.2, 0.25, 0.6, 0.75, 1.0])
    curve = gap_curve(x, y, h, us)

    def integrand(t):
        return (x.quantile(t) - y.quantile(t)) * float(h.derivative(t))

    for u, d in zip(us, curve.ds):
        pts = [p for p in (0.5, 0.75) if p < u]
        ref = integrate.quad(integrand, 1e-12, u, points=pts or None, epsabs=1e-12, limit=200)[0]
        assert d == pytest.approx(ref, abs=2e-8)


def test_ssd_icx_examples():
    assert check_ssd(logistic(0, 1), logistic(0, 1.1)).holds
    assert check_ssd(constant(0.5), uniform()).holds
    assert check_ssd(SKEW_X, SKEW_X).holds and check_icx(SKEW_X, SKEW_X).holds
    assert check_icx(logistic(0, 1.1), logistic(0, 1)).holds
    assert not check_icx(logistic(0, 1), logistic(0, 1.1)).holds


def test_logistic_power2_holds():
    assert check_hdsd(logistic(0.1, 1), logistic(0, 1.1), Power(2)).holds


def test_risk_loving_and_mixed_symmetric_pair():
    assert check_risk_loving_hdsd(SYM_X, SYM_Y, Identity()).holds
    assert check_risk_loving_hdsd(SKEW_X, SKEW_X, Power(3)).holds
    assert check_risk_loving_hdsd(SYM_X, SYM_Y, Power(1.57)).holds
    assert not check_risk_loving_hdsd(SYM_X, SYM_Y, Power(1.6)).holds
    assert check_mixed(SYM_X, SYM_Y, Power(1.5), Power(1.5)).holds
    assert check_mixed(SKEW_X, SKEW_X, Identity(), Identity()).holds
    assert not check_mixed(SYM_X, SYM_Y, Power(1.7), Power(1.7)).holds


def test_symmetric_pair_mirror():
    us = np.linspace(0, 1, 31)
    for k in (0.5, 1.0, 1.5849625, 2.0):
        a = gap_curve(SYM_X, SYM_Y, Power(k), us).ds
        b = gap_curve(negate(SYM_Y), negate(SYM_X), Power(k), us).ds
        np.testing.assert_allclose(a, b, atol=1e-13)


def test_single_crossing_detection():
    info = detect_single_crossing(constant(0.3), uniform())
    assert info.single_crossing_from_below and info.crossing_point == pytest.approx(0.3)
    assert not detect_single_crossing(SKEW_X, SKEW_Y).single_crossing_from_below
    assert not detect_single_crossing(SKEW_X, SKEW_X).single_crossing_from_below
    assert not detect_single_crossing(normal(), normal()).single_crossing_from_below
    n = detect_single_crossing(normal(0.1, 1), normal(0, 1.1))
    assert n.single_crossing_from_below
    assert n.crossing_point == pytest.approx(norm.cdf(1.0))
    assert not detect_single_crossing(normal(0, 1.1), normal(0.1, 1)).single_crossing_from_below


def test_shortcut_examples():
    v = check_t3_shortcut(constant(0.8), uniform(), Power(4))
    assert v.holds and v.method is Method.SINGLE_CROSSING_SHORTCUT
    assert check_t3_shortcut(logistic(0, 1), logistic(0, 1.1), Power(1)).holds
    with pytest.raises(NotApplicableError):
        check_t3_shortcut(SKEW_X, SKEW_Y, Power(1))


def test_normal_boundary_sits_just_below_382():
    """E_{H_k}(Z) = 1 at k = 3.8143; at 3.82 the end gap is -9.3e-5, so the
    relation fails there by a hair (the two-digit value is a rounding)."""
    x, y = normal(0.1, 1), normal(0, 1.1)
    assert check_t3_shortcut(x, y, Power(3.81)).holds
    v = check_t3_shortcut(x, y, Power(3.82))
    assert not v.holds and v.min_gap == pytest.approx(-9.2857e-5, rel=1e-3)
    assert not check_hdsd(x, y, Power(3.82), shortcut=False).holds


def test_large_k_does_not_flip_back_to_holding():
    """D(u) of order (3/4)^k must still count as a failure when k is huge."""
    for k in (50.0, 1e3, 1e6):
        v = check_hdsd(SKEW_X, SKEW_Y, Power(k))
        assert not v.holds and v.min_average_gap == pytest.approx(-1.0)


def test_gp_and_dual_distortions_in_checks():
    # GP(p) puts weight only on [1 - p, 1]
    assert check_hdsd(SKEW_X, SKEW_Y, GP(0.2)).holds
    assert check_hdsd(constant(0.8), uniform(), dual(Power(2))).holds
    assert check_hdsd(constant(0.8), uniform(), GP(0.5), shortcut=False).holds


def test_shortcut_and_full_check_agree_on_examples():
    pairs = [(constant(0.8), uniform()), (logistic(0.1, 1), logistic(0, 1.1)), (normal(0.1, 1), normal(0, 1.1))]
    for x, y in pairs:
        for k in (0.5, 1.0, 2.0, 3.0, 4.5, 6.0):
            a = check_hdsd(x, y, Power(k))
            b = check_hdsd(x, y, Power(k), shortcut=False)
            assert a.holds == b.holds, (x, y, k)
