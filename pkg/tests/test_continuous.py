import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from nstab.continuous import (
    Exponential,
    ExtendedLogLogistic,
    GeneralizedSemiPareto,
    PeriodicHazard,
    SemiPareto,
    SemiWeibull,
    cdf,
    psi_eval,
    quantile,
    sample_cont,
)
from nstab.errors import DomainError, ParameterError

LOG_GRID = np.geomspace(1e-3, 1e3, 100)


@st.composite
def hazards(draw):
    alpha = draw(st.floats(0.1, 4.0))
    p = draw(st.floats(0.02, 0.98))
    frac = draw(st.floats(-1.0, 1.0))
    phase = draw(st.floats(0.0, 2 * math.pi, exclude_max=True))
    return PeriodicHazard(alpha, p, frac * PeriodicHazard.eps_bound(p), phase)


def families_for(h):
    return [SemiWeibull(h), GeneralizedSemiPareto(h, 0.7), SemiPareto(h)]


# --- hazard ------------------------------------------------------------------

def test_psi_pure_power():
    assert psi_eval(PeriodicHazard(1.5, 0.4), 2.0) == pytest.approx(2**1.5, rel=1e-15)
    assert psi_eval(PeriodicHazard(1.5, 0.4, 0.0, 2.0), 2.0) == pytest.approx(2.8284271, rel=1e-7)


def test_psi_periodic_formula():
    h = PeriodicHazard(1.5, 0.4, 0.1, 1.0)
    x = 3.7
    period = math.log(1 / 0.4) / 1.5
    ref = x**1.5 * math.exp(0.1 * math.sin(2 * math.pi * math.log(x) / period + 1.0))
    assert psi_eval(h, x) == pytest.approx(ref, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(h=hazards())
def test_hazard_functional_equation(h):
    psi = h(LOG_GRID)
    scaled = h(h.p ** (1 / h.alpha) * LOG_GRID) / h.p
    assert np.max(np.abs(scaled - psi) / psi) < 1e-12


@settings(max_examples=50, deadline=None)
@given(h=hazards())
def test_hazard_limits_and_order(h):
    psi = h(np.geomspace(1e-30, 1e30, 2001))
    assert np.all(np.diff(psi) >= 0.0)
    assert h(1e-300) < 1e-10 and h(1e300) > 1e10


@pytest.mark.parametrize("p", [0.05, 0.4, 0.9])
@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.5])
def test_monotonicity_bound_by_finite_differences(alpha, p):
    bound = PeriodicHazard.eps_bound(p)
    assert bound == pytest.approx(math.log(1 / p) / (2 * math.pi))
    period = math.log(1 / p) / alpha
    # a dense log grid covering several periods
    w = np.linspace(-3 * period, 3 * period, 20001)

    def psi(eps):
        return np.exp(alpha * w + eps * np.sin(2 * math.pi * w / period))

    at_bound = np.diff(psi(bound))
    assert np.all(at_bound >= -1e-12 * psi(bound)[1:])
    beyond = np.diff(psi(1.3 * bound))
    assert np.any(beyond < 0.0)
    assert np.all(np.diff(PeriodicHazard(alpha, p, bound)(np.exp(w))) >= 0.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(alpha=0.0, p=0.5),
        dict(alpha=1.0, p=1.0),
        dict(alpha=1.0, p=0.0),
        dict(alpha=1.0, p=0.5, eps=0.2),
        dict(alpha=1.0, p=0.5, phase=7.0),
    ],
)
def test_hazard_rejects_invalid(kwargs):
    with pytest.raises(ParameterError):
        PeriodicHazard(**kwargs)


def test_hazard_accepts_exact_bound():
    p = 0.3
    PeriodicHazard(1.0, p, -PeriodicHazard.eps_bound(p))


# --- distribution functions --------------------------------------------------

def test_cdf_examples():
    assert cdf(Exponential(1.0), math.log(2)) == pytest.approx(0.5, abs=1e-15)
    gsp = GeneralizedSemiPareto(PeriodicHazard(2.0, 0.5), 0.5)
    assert cdf(gsp, 1.0) == pytest.approx(1 - 2**-0.5, abs=1e-15)
    assert cdf(gsp, 1.0) == pytest.approx(0.29289, abs=1e-5)
    ell = ExtendedLogLogistic(1.0, 2)
    assert cdf(ell, 1.0) == pytest.approx(2**-0.5, abs=1e-15)


def test_closed_forms():
    x = LOG_GRID
    for a in (0.5, 1.0, 2.0):
        sw = SemiWeibull(PeriodicHazard(a, 0.3))
        assert np.allclose(sw.cdf(x), stats.weibull_min(a).cdf(x), rtol=1e-14, atol=1e-15)
        # exp(-psi) turns an ulp-level error in psi into a relative error of order psi * 2**-52,
        # in both this implementation and the reference
        sf_ref = stats.weibull_min(a).sf(x)
        assert np.all(np.abs(sw.sf(x) - sf_ref) <= 1e-15 * (1 + x**a) * sf_ref + 1e-300)
        for k in (1, 2, 3):
            gsp = GeneralizedSemiPareto(PeriodicHazard(a, 0.3), 1.0 / k)
            burr = stats.burr12(c=a, d=1.0 / k)  # 1 - (1 + x^a)^(-1/k)
            assert np.allclose(gsp.cdf(x), burr.cdf(x), rtol=1e-13, atol=1e-15)
            ell = ExtendedLogLogistic(a, k)
            burr3 = stats.burr(c=a, d=1.0 / k)  # (1 + x^-a)^(-1/k)
            assert np.allclose(ell.cdf(x), burr3.cdf(x), rtol=1e-13, atol=1e-15)


def test_semi_pareto_is_gsp_with_unit_beta():
    h = PeriodicHazard(0.8, 0.35, 0.1, 2.0)
    x = np.geomspace(1e-4, 1e4, 1001)
    assert np.max(np.abs(SemiPareto(h).cdf(x) - GeneralizedSemiPareto(h, 1.0).cdf(x))) <= 1e-15


@settings(max_examples=40, deadline=None)
@given(h=hazards())
def test_cdf_monotone_and_complementary(h):
    x = np.geomspace(1e-6, 1e6, 3001)
    for f in families_for(h):
        F = f.cdf(x)
        assert np.all(np.diff(F) >= 0.0)
        assert np.all((F >= 0) & (F <= 1))
        assert np.allclose(F + f.sf(x), 1.0, atol=1e-15)


def test_cdf_limits():
    h = PeriodicHazard(1.2, 0.5, 0.05)
    for f in families_for(h) + [Exponential(2.0), ExtendedLogLogistic(1.5, 2)]:
        assert f.cdf(1e-300) < 1e-12
        assert f.cdf(1e300) == 1.0 or f.sf(1e300) < 1e-12


def test_deep_tail_survival_is_not_rounded():
    f = SemiWeibull(PeriodicHazard(1.0, 0.5))
    assert f.sf(700.0) == pytest.approx(math.exp(-700.0), rel=1e-12)
    g = GeneralizedSemiPareto(PeriodicHazard(2.0, 0.5), 0.5)
    assert g.sf(1e8) == pytest.approx((1 + 1e16) ** -0.5, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, float("nan")])
def test_cdf_domain(x):
    with pytest.raises(DomainError):
        cdf(Exponential(1.0), x)


# --- quantiles ---------------------------------------------------------------

def test_quantile_examples():
    assert quantile(Exponential(1.0), 0.5) == pytest.approx(math.log(2), rel=1e-15)
    sw = SemiWeibull(PeriodicHazard(1.5, 0.4, 0.05))
    x = quantile(sw, 0.9)
    assert abs(cdf(sw, x) - 0.9) < 1e-12


@pytest.mark.parametrize("frac", [0.0, 0.5, 1.0, -1.0])
@pytest.mark.parametrize("s", [1e-6, 0.5, 1 - 1e-6])
def test_quantile_round_trip(frac, s):
    p = 0.4
    h = PeriodicHazard(1.3, p, frac * PeriodicHazard.eps_bound(p), 0.7)
    for f in families_for(h) + [Exponential(0.7), ExtendedLogLogistic(0.9, 3)]:
        x = f.quantile(s)
        assert f.cdf(x) == pytest.approx(s, abs=1e-12)
        y = f.isf(s)
        assert f.sf(y) == pytest.approx(s, rel=1e-10)


def test_quantile_domain():
    with pytest.raises(DomainError):
        quantile(Exponential(1.0), 1.5)


# --- samplers ----------------------------------------------------------------

def test_exponential_sample_mean():
    draws = Exponential(2.0).sample(np.random.default_rng(3), 10**5)
    assert abs(np.mean(draws) - 0.5) < 0.01


def test_ext_log_logistic_sample_at_one():
    draws = ExtendedLogLogistic(1.0, 1).sample(np.random.default_rng(4), 10**5)
    assert abs(np.mean(draws <= 1.0) - 0.5) < 0.005


@pytest.mark.parametrize("p", [0.2, 0.7])
def test_semi_weibull_unit_power_is_exponential(p):
    draws = sample_cont(SemiWeibull(PeriodicHazard(1.0, p)), np.random.default_rng(5), 10**5)
    assert stats.kstest(draws, stats.expon.cdf).pvalue > 0.01


@pytest.mark.parametrize(
    "family",
    [
        SemiWeibull(PeriodicHazard(1.5, 0.4, 0.145, 1.0)),
        GeneralizedSemiPareto(PeriodicHazard(0.7, 0.25, -0.2, 4.0), 0.5),
        SemiPareto(PeriodicHazard(2.0, 0.6, 0.08)),
        ExtendedLogLogistic(1.5, 2),
    ],
    ids=lambda f: f.describe(),
)
def test_sampler_ks(family):
    draws = family.sample(np.random.default_rng(6), 10**5)
    assert stats.kstest(draws, family.cdf).pvalue > 0.01


def test_sample_scalar_and_reproducible():
    f = SemiPareto(PeriodicHazard(1.0, 0.5, 0.05))
    assert isinstance(f.sample(np.random.default_rng(1)), float)
    a = f.sample(np.random.default_rng(9), 50)
    b = f.sample(np.random.default_rng(9), 50)
    assert np.array_equal(a, b)


@pytest.mark.parametrize(
    "build",
    [
        lambda: Exponential(0.0),
        lambda: GeneralizedSemiPareto(PeriodicHazard(1.0, 0.5), 0.0),
        lambda: ExtendedLogLogistic(0.0, 1),
        lambda: ExtendedLogLogistic(1.0, 1.5),
    ],
)
def test_family_rejects_invalid(build):
    with pytest.raises(ParameterError):
        build()
