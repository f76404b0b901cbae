import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dce_quasimode.core import ModulationProfile, normalized_cavity
from dce_quasimode.dynamics import (bogoliubov_trajectory, coupling_function, evolve_bogoliubov,
                                    integrate_bogoliubov, internal_photon_number,
                                    squeezing_general, squeezing_resonant)
from dce_quasimode.errors import ValidationError

CFG = normalized_cavity()


def test_rotating_wave_matches_sinh():
    prof = ModulationProfile.resonant(0.01)
    nu0 = prof.coupling_rate
    traj = integrate_bogoliubov(coupling_function(0.0, CFG, prof, "rotating_wave"), 3 / nu0, 1e-10)
    ref = np.sinh(nu0 * traj.times[1:]) ** 2
    assert np.max(np.abs(traj.photon_number[1:] / ref - 1)) < 1e-8
    assert np.max(np.abs(traj.unitarity_defect)) < 1e-9


def test_detuned_rotating_wave_has_analytic_solution():
    # constant detuning: |v|^2 = (nu0/g)^2 sinh^2(g t), g^2 = nu0^2 - xi^2
    prof = ModulationProfile.resonant(0.02)
    nu0, xi = prof.coupling_rate, 0.004
    g = math.sqrt(nu0 ** 2 - xi ** 2)
    t = np.linspace(0, 200, 9)
    traj = integrate_bogoliubov(lambda s: nu0 * np.exp(2j * xi * s), t[-1], 1e-11, t_eval=t)
    assert np.allclose(traj.photon_number, (nu0 / g * np.sinh(g * t)) ** 2, rtol=1e-8, atol=1e-14)


def test_full_coupling_stroboscopic():
    prof = ModulationProfile.resonant(0.01)
    nu0 = prof.coupling_rate
    times = np.arange(1, 40) * math.pi * 10
    traj = bogoliubov_trajectory(0.0, CFG, prof, times)
    assert np.max(np.abs(traj.photon_number / np.sinh(nu0 * times) ** 2 - 1)) < 0.05
    assert np.max(np.abs(traj.unitarity_defect)) < 1e-7


def test_leading_coupling_close_to_exact():
    prof = ModulationProfile.resonant(0.01)
    a = evolve_bogoliubov(0.0, CFG, prof, 200.0, coupling="leading")
    b = evolve_bogoliubov(0.0, CFG, prof, 200.0, coupling="exact")
    assert a.photon_number == pytest.approx(b.photon_number, rel=0.05)


def test_zero_drive_is_vacuum():
    prof = ModulationProfile(0.0, 2.0)
    pair = evolve_bogoliubov(0.1, CFG, prof, 100.0)
    assert pair.photon_number == 0 and pair.unitarity_defect == 0


def test_invalid_inputs():
    prof = ModulationProfile.resonant(0.01)
    with pytest.raises(ValidationError):
        coupling_function(0.0, CFG, prof, "nonsense")
    with pytest.raises(ValidationError):
        integrate_bogoliubov(lambda t: 0j, -1.0)
    with pytest.raises(ValidationError):
        squeezing_resonant(0.0, -1.0, 0.1)


@given(xi=st.floats(-1e3, 1e3), t=st.floats(0.0, 1e4), nu0=st.floats(0.0, 1.0))
def test_resonant_squeezing_bounded_by_resonance(xi, t, nu0):
    r = squeezing_resonant(xi, t, nu0)
    assert abs(r) <= nu0 * t * (1 + 1e-12) + 1e-300


def test_resonant_squeezing_small_detuning_continuity():
    # across the series switch the value must not jump
    t, nu0 = 100.0, 0.01
    xs = np.array([0.0, 1e-12, 0.99e-8, 1.01e-8, 1e-7])
    r = squeezing_resonant(xs, t, nu0)
    assert np.allclose(np.abs(r), nu0 * t, rtol=1e-9)
    assert np.allclose(np.angle(r), xs * t, rtol=1e-9, atol=1e-18)


@given(xi=st.floats(-0.05, 0.05), t=st.floats(0.0, 400.0))
def test_resonant_squeezing_closed_form(xi, t):
    nu0 = 0.01
    if abs(xi * t) > 1e-3:
        ref = nu0 * (np.exp(2j * xi * t) - 1) / (2j * xi)
        assert squeezing_resonant(xi, t, nu0) == pytest.approx(ref, rel=1e-9, abs=1e-15)


def test_general_squeezing_reduces_to_resonant_term_on_average():
    # the l = 0 term of the Bessel sum dominates at Omega = 2 omega0
    prof = ModulationProfile.resonant(0.01)
    t = 500.0
    r = squeezing_general(0.0, t, CFG, prof)
    assert abs(r) == pytest.approx(prof.coupling_rate * t, rel=0.01)


def test_internal_photon_number():
    assert internal_photon_number(1j * 0.5) == pytest.approx(math.sinh(0.5) ** 2)
