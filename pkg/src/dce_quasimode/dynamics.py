"""Pair amplitude evolution: Bogoliubov ODE oracle and squeezing functions.

The amplitude equations ``dA/dt = nu A_p^dag``, ``dA_p^dag/dt = nu* A`` are
linear, so writing ``A(t) = u A(0) + v A_p^dag(0)`` reduces them to

    du/dt = nu(t) conj(v),    dv/dt = nu(t) conj(u),

starting from the vacuum coefficients (1, 0).  ``|u|^2 - |v|^2`` is
conserved and ``|v|^2`` is the pair number of the internal mode.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from . import modulation as mod
from .bessel import bessel_j
from .core import BogoliubovPair, CavityConfig, ModulationProfile
from .errors import IntegrationError, ValidationError

COUPLINGS = ("exact", "leading", "rotating_wave")

_SERIES_SWITCH = 1e-6


class Trajectory(NamedTuple):
    times: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def photon_number(self):
        return np.abs(self.v) ** 2

    @property
    def unitarity_defect(self):
        return np.abs(self.u) ** 2 - np.abs(self.v) ** 2 - 1.0


def coupling_function(xi, cfg, prof, kind="exact") -> Callable[[float], complex]:
    """Return ``nu(t)`` for one spectral component.

    ``exact`` uses the full rate and closed-form phase, ``leading`` the
    small-epsilon forms, and ``rotating_wave`` keeps only the stationary
    term ``nu0 exp(2 i xi t)`` (a constant at xi = 0).
    """
    if kind == "exact":
        return lambda t: complex(mod.coupling(t, xi, cfg, prof, exact=True))
    if kind == "leading":
        return lambda t: complex(mod.coupling(t, xi, cfg, prof, exact=False))
    if kind == "rotating_wave":
        nu0 = prof.coupling_rate
        return lambda t: nu0 * np.exp(2j * xi * t)
    raise ValidationError("coupling", f"unknown kind {kind!r}; expected one of {COUPLINGS}")


def integrate_bogoliubov(nu, t_end, tol=1e-9, t_eval=None, max_step=None) -> Trajectory:
    """Integrate the coefficient system for an arbitrary coupling ``nu(t)``.

    Uses an explicit 8th-order Dormand-Prince scheme with relative tolerance
    ``tol``.  Returns every accepted step, or the states at ``t_eval``.
    """
    if t_end < 0:
        raise ValidationError("t_end", "must be >= 0")
    if not tol > 0:
        raise ValidationError("tol", "must be > 0")
    if t_end == 0:
        return Trajectory(np.zeros(1), np.ones(1, dtype=complex), np.zeros(1, dtype=complex))

    def rhs(t, y):
        n = nu(t)
        return [n.real * y[2] + n.imag * y[3],
                n.imag * y[2] - n.real * y[3],
                n.real * y[0] + n.imag * y[1],
                n.imag * y[0] - n.real * y[1]]

    kwargs = {}
    if max_step is not None:
        kwargs["max_step"] = max_step
    sol = solve_ivp(rhs, (0.0, float(t_end)), [1.0, 0.0, 0.0, 0.0], method="DOP853",
                    rtol=tol, atol=tol * 1e-3, t_eval=t_eval, **kwargs)
    if sol.status != 0:
        last_t = float(sol.t[-1]) if sol.t.size else 0.0
        state = (BogoliubovPair(complex(sol.y[0, -1], sol.y[1, -1]), complex(sol.y[2, -1], sol.y[3, -1]))
                 if sol.t.size else BogoliubovPair())
        raise IntegrationError(f"integration failed at t={last_t:.6g}: {sol.message}", t=last_t, state=state)
    return Trajectory(sol.t, sol.y[0] + 1j * sol.y[1], sol.y[2] + 1j * sol.y[3])


def evolve_bogoliubov(xi, cfg: CavityConfig, prof: ModulationProfile, t_end, tol=1e-9,
                      coupling="exact") -> BogoliubovPair:
    """Bogoliubov coefficients of spectral component ``xi`` at ``t_end``."""
    if prof.amplitude == 0:
        if t_end < 0:
            raise ValidationError("t_end", "must be >= 0")
        return BogoliubovPair()
    traj = integrate_bogoliubov(coupling_function(xi, cfg, prof, coupling), t_end, tol,
                                max_step=_max_step(prof, coupling))
    return BogoliubovPair(complex(traj.u[-1]), complex(traj.v[-1]))


def bogoliubov_trajectory(xi, cfg, prof, times, tol=1e-9, coupling="exact") -> Trajectory:
    """Coefficients at each of ``times`` (nondecreasing, starting at or after 0)."""
    times = np.asarray(times, dtype=float)
    if prof.amplitude == 0:
        return Trajectory(times, np.ones_like(times, dtype=complex), np.zeros_like(times, dtype=complex))
    return integrate_bogoliubov(coupling_function(xi, cfg, prof, coupling), times[-1], tol,
                                t_eval=times, max_step=_max_step(prof, coupling))


def _max_step(prof, coupling):
    # stop the step controller from striding over whole drive periods
    if coupling == "rotating_wave":
        return None
    return 0.25 * min(np.pi / prof.drive_frequency, np.pi / 2.0)


def _sinc(x):
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.sin(x) / x
    return np.where(np.abs(x) < _SERIES_SWITCH, 1.0 - x * x / 6.0, out)


def _time_integral(theta, t):
    """``int_0^t exp(i theta t') dt' = t exp(i x) sin(x)/x`` with x = theta t / 2.

    The half-angle form has no cancellation as theta t -> 0.
    """
    x = 0.5 * np.asarray(theta, dtype=float) * t
    return t * np.exp(1j * x) * _sinc(x)


def squeezing_resonant(xi, t, nu0, phase_rate=2.0):
    """Squeezing function at the dominant resonance.

    ``nu0 int_0^t exp(i phase_rate xi t') dt'``.  The default rate 2
    corresponds to both photons of the pair sharing the offset xi.
    """
    if np.any(np.asarray(t) < 0):
        raise ValidationError("t", "must be >= 0")
    return nu0 * _time_integral(phase_rate * np.asarray(xi, dtype=float), t)


def squeezing_general(xi, t, cfg, prof: ModulationProfile, l_max=8):
    """Squeezing function from the Bessel expansion of the drive.

    ``(eps Omega / 4) sum_l i^l J_l(alpha) int_0^t [e^{i w+ t'} + e^{i w- t'}] e^{2 i xi t'} dt'``
    with ``w+- = 2 omega0 + (l +- 1) Omega``.
    """
    if t < 0:
        raise ValidationError("t", "must be >= 0")
    eps, om, alpha = prof.amplitude, prof.drive_frequency, prof.bessel_argument
    xi = np.asarray(xi, dtype=float)
    total = np.zeros(xi.shape, dtype=complex)
    for l in sorted(range(-l_max, l_max + 1), key=lambda k: (-abs(k), k)):
        jl = bessel_j(l, alpha)
        if jl == 0.0:
            continue
        w_plus = 2.0 * mod.OMEGA0 + (l + 1) * om
        w_minus = 2.0 * mod.OMEGA0 + (l - 1) * om
        total += (1j ** l) * jl * (_time_integral(w_plus + 2.0 * xi, t) + _time_integral(w_minus + 2.0 * xi, t))
    return 0.25 * eps * om * total


def internal_photon_number(r):
    """Pair number ``sinh^2 |r|`` of one internal mode."""
    from .photon_number import stable_sinh2

    return stable_sinh2(np.abs(r))
