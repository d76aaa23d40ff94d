import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from stabtime.limits import (
    Chi3Half,
    Gaussian,
    NuLambda,
    ShiftedNuLambda,
    bm_max_joint_pdf,
    mean,
    pdf_via_line_integral,
    total_mass,
)

SD = 0.5  # sd of the N(c, 1/4) pieces below


def nu_pdf_oracle(t, lam):
    """Density as a difference of two N(+-lam/2, 1/4) densities."""
    a = lam / 2
    g = lambda c: stats.norm.pdf(t, c, SD)
    return np.where(t > 0, 2 * t / lam * (g(a) - g(-a)), 0.0)


def nu_cdf_oracle(x, lam):
    # integral of t g_c(t) is c Phi((t - c)/sd) - sd^2 g_c(t)
    a = lam / 2

    def antider(t, c):
        return c * stats.norm.cdf(t, c, SD) - SD**2 * stats.norm.pdf(t, c, SD)

    return 2 / lam * (antider(x, a) - antider(0, a) - antider(x, -a) + antider(0, -a))


GRID = np.linspace(0.05, 3.5, 70)


def test_chi3half_pdf_and_cdf_against_scipy():
    d = Chi3Half()
    assert np.allclose(d.pdf(GRID), 2 * stats.chi(3).pdf(2 * GRID), rtol=1e-13, atol=0)
    assert np.allclose(d.cdf(GRID), stats.chi(3).cdf(2 * GRID), rtol=0, atol=1e-10)


def test_chi3half_mean():
    assert mean(Chi3Half()) == pytest.approx(math.sqrt(2 / math.pi), abs=1e-10)


@pytest.mark.parametrize("lam", [0.01, 0.5, 1.0, 3.0, 12.0])
def test_nu_against_gaussian_difference(lam):
    d = NuLambda(lam)
    assert np.allclose(d.pdf(GRID + lam / 2), nu_pdf_oracle(GRID + lam / 2, lam), rtol=1e-9, atol=1e-14)
    assert np.allclose(d.cdf(GRID + lam / 2), nu_cdf_oracle(GRID + lam / 2, lam), atol=1e-9)


@pytest.mark.parametrize("lam", [0.0, 0.5, 1.0, 2.0])
def test_line_integral_oracle(lam):
    d = Chi3Half() if lam == 0 else NuLambda(lam)
    for x in np.arange(0.25, 3.01, 0.25):
        assert pdf_via_line_integral(x, lam) == pytest.approx(float(d.pdf(x)), abs=1e-10)


@pytest.mark.parametrize(
    "d", [Chi3Half(), NuLambda(1e-4), NuLambda(1.0), NuLambda(30.0), ShiftedNuLambda(20.0), Gaussian(0, 3 / 16)]
)
def test_total_mass(d):
    assert total_mass(d) == pytest.approx(1.0, abs=1e-9)


def test_nu_mean_shift_for_large_lambda():
    assert mean(NuLambda(20.0)) == pytest.approx(10.0 + 1 / 40, abs=1e-6)


def test_small_lambda_approaches_chi():
    xs = np.linspace(0, 3, 301)
    assert np.max(np.abs(NuLambda(1e-4).pdf(xs) - Chi3Half().pdf(xs))) < 1e-6


def test_shifted_nu_is_a_translate():
    xs = np.linspace(-1.5, 1.5, 31)
    assert np.allclose(ShiftedNuLambda(2.0).pdf(xs), NuLambda(2.0).pdf(xs + 1.0), rtol=1e-14)
    assert ShiftedNuLambda(2.0).lower == -1.0


def test_gaussian_cdf():
    d = Gaussian(0.0, 3 / 16)
    assert np.allclose(d.cdf(GRID), stats.norm.cdf(GRID, 0, math.sqrt(3 / 16)), atol=1e-15)
    with pytest.raises(ValueError):
        Gaussian(0, 0)


def test_lambda_must_be_positive():
    with pytest.raises(ValueError):
        NuLambda(0.0)
    with pytest.raises(ValueError):
        pdf_via_line_integral(1.0, -1.0)


def test_cdf_edges_and_scalar():
    d = Chi3Half()
    assert d.cdf(-1.0) == 0.0
    assert d.cdf(40.0) == pytest.approx(1.0, abs=1e-12)
    assert isinstance(d.cdf(1.0), float)


@settings(max_examples=8, deadline=None)
@given(st.floats(0.01, 0.99))
def test_ppf_inverts_cdf(u):
    d = NuLambda(1.0)
    assert float(d.cdf(float(d.ppf(u)))) == pytest.approx(u, abs=1e-8)


@settings(max_examples=50)
@given(st.floats(-2, 2), st.floats(-2, 2))
def test_joint_density_support(b, a):
    val = bm_max_joint_pdf(b, a)
    if b < max(a, 0):
        assert val == 0.0
    else:
        assert val >= 0.0


def test_joint_density_integrates_to_one():
    from scipy import integrate

    val, _ = integrate.dblquad(lambda a, b: bm_max_joint_pdf(b, a), 0, 12, lambda b: -12, lambda b: b)
    assert val == pytest.approx(1.0, abs=1e-8)
