import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dce_quasimode import (BogoliubovPair, CavityConfig, ModulationProfile, PhotonNumberSeries,
                           QuasiMode, TimeGrid, ValidationError, new_cavity, new_quasimode,
                           normalized_cavity)


def test_cavity_frequency():
    cfg = new_cavity(m=2, L=3.0, n0=1.5, c=2.0)
    assert cfg.wavenumber == pytest.approx(2 * math.pi * 2 / 3.0)
    assert cfg.base_frequency == pytest.approx(cfg.wavenumber * 2.0 / 1.5)


def test_normalized_cavity_has_unit_frequency():
    for m in (1, 3, 7):
        assert normalized_cavity(m, 1.7).base_frequency == pytest.approx(1.0, rel=1e-15)


@given(m=st.integers(1, 50), L=st.floats(1e-3, 1e3), n0=st.floats(1.0, 4.0), c=st.floats(0.1, 1e3))
def test_internal_units_round_trip(m, L, n0, c):
    cfg = new_cavity(m, L, n0, c)
    internal, scale = cfg.to_internal()
    assert internal.base_frequency == pytest.approx(1.0, rel=1e-12)
    back = CavityConfig.from_internal(internal, scale)
    assert back.cavity_length == pytest.approx(L, rel=1e-12)
    assert back.base_frequency == pytest.approx(cfg.base_frequency, rel=1e-12)


@pytest.mark.parametrize("kwargs", [
    dict(m=0, L=1.0, n0=1.0), dict(m=1, L=-1.0, n0=1.0), dict(m=1, L=1.0, n0=0.0),
    dict(m=1, L=math.inf, n0=1.0), dict(m=1.5, L=1.0, n0=1.0),
])
def test_cavity_rejects_bad_input(kwargs):
    with pytest.raises(ValidationError):
        new_cavity(**kwargs)


def test_quasimode_linewidth():
    qm = new_quasimode(normalized_cavity(), 100)
    assert qm.linewidth == pytest.approx(0.01)
    assert qm.coherence_time == pytest.approx(100.0)
    assert QuasiMode.from_linewidth(0.02).quality_factor == pytest.approx(50.0)


@pytest.mark.parametrize("Q", [0, -5, math.inf, math.nan])
def test_quasimode_rejects_bad_q(Q):
    with pytest.raises(ValidationError):
        new_quasimode(normalized_cavity(), Q)


def test_modulation_profile_derived_rates():
    prof = ModulationProfile.resonant(0.01)
    assert prof.drive_frequency == 2.0
    assert prof.coupling_rate == pytest.approx(0.005)
    assert prof.bessel_argument == pytest.approx(0.01)


@pytest.mark.parametrize("eps,om", [(1.0, 2.0), (1.5, 2.0), (-0.1, 2.0), (0.1, 0.0), (0.1, -1.0)])
def test_modulation_profile_rejects(eps, om):
    with pytest.raises(ValidationError):
        ModulationProfile(eps, om)


def test_bogoliubov_pair_vacuum():
    pair = BogoliubovPair()
    assert pair.photon_number == 0
    assert pair.unitarity_defect == 0
    s = BogoliubovPair(math.cosh(1.2), math.sinh(1.2))
    assert s.unitarity_defect == pytest.approx(0, abs=1e-14)


def test_time_grid_spans_coherence_times():
    t = TimeGrid(1e-3, 10.0, 5).times(100.0)
    assert t[0] == pytest.approx(0.1) and t[-1] == pytest.approx(1000.0)
    assert np.allclose(np.diff(np.log(t)), np.log(10))
    lin = TimeGrid(0.0, 1.0, 3, "linear").times(2.0)
    assert list(lin) == [0.0, 1.0, 2.0]


def test_time_grid_rejects():
    with pytest.raises(ValidationError):
        TimeGrid(0.0, 1.0, 10, "log")
    with pytest.raises(ValidationError):
        TimeGrid(1.0, 0.5, 10)
    with pytest.raises(ValidationError):
        TimeGrid(spacing="cubic")


def test_series_validation():
    t = np.array([1.0, 2.0])
    s = PhotonNumberSeries(t, {"closed_weak": [0.1, 0.2]}, coherence_time=2.0)
    assert list(s.times_over_tau) == [0.5, 1.0]
    with pytest.raises(ValidationError):
        PhotonNumberSeries(t, {"mystery": [0, 0]}, 1.0)
    with pytest.raises(ValidationError):
        PhotonNumberSeries(t, {"closed_weak": [0.1]}, 1.0)
    with pytest.raises(ValidationError):
        PhotonNumberSeries(t, {"closed_weak": [-1.0, 0.0]}, 1.0)
    with pytest.raises(ValidationError):
        PhotonNumberSeries(t[::-1], {"closed_weak": [0, 0]}, 1.0)
