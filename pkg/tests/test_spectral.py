import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dce_quasimode.errors import NumericalError, ValidationError
from dce_quasimode.spectral import (GAUSS_WEIGHTS, KRONROD_NODES, KRONROD_WEIGHTS, SpectralShape,
                                    adaptive_panels, fourier_integral_oracle,
                                    integrate_over_linewidth, lorentzian_fourier,
                                    lorentzian_shape, lorentzian_weight, shape_norm)


def test_kronrod_rule_exactness():
    # K15 integrates x^k exactly through degree 22, G7 through degree 13
    for k in range(23):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert np.dot(KRONROD_WEIGHTS, KRONROD_NODES ** k) == pytest.approx(exact, abs=1e-15)
        if k < 14:
            assert np.dot(GAUSS_WEIGHTS, KRONROD_NODES ** k) == pytest.approx(exact, abs=1e-15)


def test_weight_is_half_square_shape():
    xi = np.linspace(-5, 5, 11)
    assert np.allclose(lorentzian_weight(xi, 0.3), lorentzian_shape(xi, 0.3) ** 2 / (2 * math.pi))


@pytest.mark.parametrize("gamma", [1e-3, 1e-2, 1.0])
@pytest.mark.parametrize("K", [1.0, 10.0, 1e4, 1e6])
def test_norm_equals_window_mass(gamma, K):
    shape = SpectralShape(gamma, K)
    assert shape_norm(shape) == pytest.approx(1.0 - shape.tail_mass, rel=1e-10)


def test_norm_at_unit_cutoff_is_half():
    assert shape_norm(SpectralShape(0.01, 1.0)) == pytest.approx(0.5, rel=1e-12)


@given(gamma=st.floats(1e-4, 10.0), K=st.floats(10.0, 1e6))
def test_norm_within_tail_bound(gamma, K):
    shape = SpectralShape(gamma, K)
    # tail mass plus the quadrature's own tolerance
    assert abs(shape_norm(shape) - 1.0) <= 2.0 / (math.pi * K) + 10 * shape.quadrature_tolerance


@given(t=st.floats(-50.0, 50.0), gamma=st.floats(1e-3, 10.0))
def test_fourier_closed_form_properties(t, gamma):
    f = lorentzian_fourier(t, gamma)
    assert f == lorentzian_fourier(-t, gamma)
    assert 0 < f <= lorentzian_fourier(0.0, gamma)


@pytest.mark.parametrize("s", [0.0, 0.5, 5.0, 20.0])
def test_fourier_oracle_full_line(s):
    gamma = 0.1
    assert fourier_integral_oracle(s / gamma, gamma) == pytest.approx(
        lorentzian_fourier(s / gamma, gamma), rel=1e-10)


@pytest.mark.parametrize("s", [0.0, 0.1, 1.0, 5.0, 20.0])
def test_windowed_fourier_within_truncation_bound(s):
    # the window drops the tail |xi| > K gamma; its contribution is bounded by
    # the tail mass, so the windowed transform is only as good as that
    gamma, K = 0.01, 1e4
    shape = SpectralShape(gamma, K)
    t = s / gamma
    res = integrate_over_linewidth(lambda xi: np.exp(-1j * xi * t), shape, frequency=t)
    exact = 2 * gamma * lorentzian_fourier(t, gamma)
    assert abs(res.value - exact) <= shape.tail_mass + 1e-9


def test_adaptive_panels_reports_failure():
    with pytest.raises(NumericalError):
        adaptive_panels(lambda x: np.sign(x - 1 / 3) * np.abs(x - 1 / 3) ** -0.9 + 0j,
                        np.array([0.0, 1.0]), 1e-14, max_refinements=3)


def test_adaptive_panels_smooth():
    res = adaptive_panels(lambda x: np.exp(x) + 0j, np.array([0.0, 1.0]), 1e-12)
    assert res.value.real == pytest.approx(math.e - 1, rel=1e-14)


def test_shape_rejects():
    with pytest.raises(ValidationError):
        SpectralShape(0.0)
    with pytest.raises(ValidationError):
        SpectralShape(0.1, cutoff_multiplier=-1)
    with pytest.raises(ValidationError):
        lorentzian_fourier(1.0, 0.0)
