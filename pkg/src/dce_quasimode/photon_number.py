"""Mean pair number of a lossy quasi-mode.

Three independent routes are provided: Lorentzian quadrature over the
internal spectral components, the closed forms, and a term-by-term sum of
the sinh^2 power series.  Times are in units of 1/omega0; ``gamma`` is the
quasi-mode half-width in the same units.

The quadrature averages the analytic square ``r(xi, t)^2`` (not
``|r|^2``); r(-xi) = conj(r(xi)) makes the average real.  The pair phase
accumulates as ``exp(i phase_rate xi t)``.  With ``phase_rate=1`` the line
average of ``exp(i xi s)`` is ``exp(-gamma s)`` and the quadrature
reproduces the saturating closed forms.  ``phase_rate=2`` gives the same
curves with gamma replaced by 2 gamma and nu0 by nu0 / 2.
"""

from __future__ import annotations

import functools
import logging
import math

import numpy as np

from .dynamics import squeezing_resonant
from .errors import ConvergenceError, NumericalError, RangeError, ValidationError
from .spectral import SpectralShape, integrate_over_linewidth

log = logging.getLogger(__name__)

SINH2_MAX_ARG = 350.0
WEAK_GUARD = 0.3


def stable_sinh2(x):
    """``sinh(x)^2`` for real x, rejecting |x| > 350."""
    x = np.abs(np.asarray(x, dtype=float))
    if np.any(x > SINH2_MAX_ARG):
        raise RangeError(f"sinh^2 argument {np.max(x):.6g} exceeds {SINH2_MAX_ARG}")
    big = x > 20.0
    xb = np.where(big, x, 0.0)
    large = 0.25 * np.exp(2.0 * xb) * np.square(-np.expm1(-2.0 * xb))
    out = np.where(big, large, np.square(np.sinh(np.where(big, 0.0, x))))
    return out if out.ndim else float(out)


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValidationError("t", "must be >= 0")
    return t


def _check_gamma(gamma):
    if not gamma > 0:
        raise ValidationError("gamma", f"must be > 0, got {gamma}")


def saturation_factor(t, gamma):
    """``(1 - exp(-gamma t)) / gamma``: the line-averaged squeezing per unit nu0."""
    return -np.expm1(-gamma * _check_time(t)) / gamma


def photon_number_weak_closed(t, nu0, gamma):
    """``(nu0/gamma)^2 (1 - exp(-gamma t))^2``."""
    _check_gamma(gamma)
    return np.square(nu0 * saturation_factor(t, gamma))


def photon_number_general_closed(t, nu0, gamma):
    """``sinh^2[(nu0/gamma) (1 - exp(-gamma t))]``, valid for any squeezing."""
    _check_gamma(gamma)
    return stable_sinh2(nu0 * saturation_factor(t, gamma))


def photon_number_series_oracle(t, nu0, gamma, n_max=30, tol=1e-12):
    """Sum the line-averaged sinh^2 power series term by term.

    ``sinh^2 r = sum_n 2^(2n-1) r^(2n) / (2n)!``; averaging ``r^(2n)`` over
    the Lorentzian factorizes into ``[nu0 (1 - e^{-gamma t}) / gamma]^(2n)``.
    Raises :class:`ConvergenceError` if the first omitted term exceeds
    ``tol`` relative to the partial sum.
    """
    _check_gamma(gamma)
    if n_max < 1:
        raise ValidationError("n_max", "must be >= 1")
    x = np.atleast_1d(nu0 * saturation_factor(t, gamma))
    x2 = x * x
    term = 0.5 * x2 * 2.0  # n = 1: 2^1 x^2 / 2!
    total = term.copy()
    for n in range(2, n_max + 1):
        term = term * 4.0 * x2 / ((2 * n) * (2 * n - 1))
        total = total + term
    nxt = term * 4.0 * x2 / ((2 * n_max + 2) * (2 * n_max + 1))
    # remaining terms shrink at least geometrically once the ratio is < 1
    ratio = 4.0 * x2 / ((2 * n_max + 2) * (2 * n_max + 1))
    with np.errstate(divide="ignore", invalid="ignore"):
        bound = np.where(ratio < 1, nxt / (1.0 - np.minimum(ratio, 0.5)), np.inf)
        rel = np.where(total > 0, bound / total, 0.0)
    if np.any(rel > tol):
        worst = float(np.max(rel))
        raise ConvergenceError(
            f"n_max={n_max} too small: truncation bound {worst:.3g} relative exceeds {tol:g}",
            estimate=total, error=worst)
    return total if np.ndim(t) else float(total[0])


def phenomenological_model(t, nu0, gamma):
    """``sinh^2(nu0 t) exp(-gamma t)``, the loss model without coherence limit."""
    _check_gamma(gamma)
    t = _check_time(t)
    x = nu0 * t
    if np.any(np.abs(x) > SINH2_MAX_ARG):
        raise RangeError(f"sinh^2 argument {np.max(np.abs(x)):.6g} exceeds {SINH2_MAX_ARG}")
    # combine exponents before exponentiating so the product cannot overflow early
    big = np.abs(x) > 20.0
    xb = np.where(big, np.abs(x), 0.0)
    large = 0.25 * np.exp(2.0 * xb - gamma * t) * np.square(-np.expm1(-2.0 * xb))
    small = np.square(np.sinh(np.where(big, 0.0, x))) * np.exp(-gamma * t)
    out = np.where(big, large, small)
    return out if out.ndim else float(out)


def asymptotic_pair_number(nu0, gamma, regime="general"):
    """Long-time pair number: ``(nu0/gamma)^2`` (weak) or ``sinh^2(nu0/gamma)``."""
    _check_gamma(gamma)
    if regime == "weak":
        return (nu0 / gamma) ** 2
    if regime == "general":
        return stable_sinh2(nu0 / gamma)
    raise ValidationError("regime", f"expected 'weak' or 'general', got {regime!r}")


def photon_number_quadrature_weak(t, nu0, gamma, shape: SpectralShape | None = None, phase_rate=1.0):
    """Line average of ``r(xi, t)^2`` to second order in the squeezing.

    Warns above nu0/gamma = 0.3 where the expansion stops being accurate.
    Raises :class:`NumericalError` if the average has an imaginary residue
    larger than ten times the quadrature tolerance.
    """
    _check_gamma(gamma)
    _weak_guard(nu0, gamma)
    return _quadrature_weak(t, nu0, gamma, shape, phase_rate)


def _weak_guard(nu0, gamma):
    if nu0 / gamma > WEAK_GUARD:
        log.warning("nu0/gamma = %.3g exceeds the weak-squeezing guard %.2g", nu0 / gamma, WEAK_GUARD)


def _quadrature_weak(t, nu0, gamma, shape, phase_rate):
    if t < 0:
        raise ValidationError("t", "must be >= 0")
    if t == 0 or nu0 == 0:
        return 0.0
    shape = shape or SpectralShape(gamma)
    if shape.linewidth != gamma:
        raise ValidationError("shape", "linewidth does not match gamma")
    return nu0 * nu0 * _weak_line_average(float(t), shape, float(phase_rate))


@functools.lru_cache(maxsize=1024)
def _weak_line_average(t, shape, phase_rate):
    # independent of nu0, so cached across coupling strengths
    def integrand(xi):
        r = squeezing_resonant(xi, t, 1.0, phase_rate=phase_rate)
        return r * r

    res = integrate_over_linewidth(integrand, shape, frequency=2.0 * phase_rate * t)
    return _real_part(res, shape)


def photon_number_quadrature_general(t, nu0, gamma, shape: SpectralShape | None = None, phase_rate=1.0):
    """Line average of the analytically continued ``sinh^2 r(xi, t)``.

    Ill-conditioned once nu0 t greatly exceeds nu0/gamma: the integrand
    peak ``sinh^2(nu0 t)`` then cancels down to a much smaller average.
    Intended for moderate times; prefer the series oracle beyond that.
    """
    _check_gamma(gamma)
    if t < 0:
        raise ValidationError("t", "must be >= 0")
    if t == 0 or nu0 == 0:
        return 0.0
    if nu0 * t > SINH2_MAX_ARG:
        raise RangeError(f"nu0 t = {nu0 * t:.6g} exceeds {SINH2_MAX_ARG}")
    shape = shape or SpectralShape(gamma)

    def integrand(xi):
        return np.square(np.sinh(squeezing_resonant(xi, t, nu0, phase_rate=phase_rate)))

    # sinh^2 of an oscillating argument contains every harmonic; size panels
    # by the largest one that still carries weight
    harmonics = max(2.0, 2.0 * nu0 * t + 2.0)
    res = integrate_over_linewidth(integrand, shape, frequency=harmonics * phase_rate * t)
    return _real_part(res, shape)


def _real_part(res, shape):
    value = res.value
    limit = 10.0 * shape.quadrature_tolerance * max(abs(value.real), np.finfo(float).tiny)
    if abs(value.imag) > max(limit, 10.0 * res.error):
        raise NumericalError(
            f"imaginary residue {value.imag:.3g} exceeds tolerance (real part {value.real:.6g})",
            estimate=value, error=res.error)
    return float(value.real)


def saturation_time(nu0, gamma, fraction=0.99, regime="general"):
    """First time at which the closed form reaches ``fraction`` of its asymptote."""
    _check_gamma(gamma)
    x = nu0 / gamma
    if regime == "weak" or x == 0:
        y = math.sqrt(fraction)
    else:
        y = math.asinh(math.sqrt(fraction) * math.sinh(x)) / x
    return -math.log1p(-y) / gamma


def compute_series(cfg, quasimode, prof, grid, methods, *, shape=None, ode_tolerance=1e-9,
                   n_max=30, version=None):
    """Evaluate each requested method on the time grid.

    ``ode_oracle`` integrates the xi = 0 component with the full oscillating
    coupling: the lossless single-mode reference curve.  Metadata records
    parameters, tolerances and, when both are present, the largest relative
    difference between ``quadrature`` and ``closed_weak``.
    """
    from . import __version__
    from .core import METHOD_TAGS, PhotonNumberSeries
    from .dynamics import bogoliubov_trajectory

    methods = list(methods)
    if not methods:
        raise ValidationError("methods", "at least one method is required")
    for m in methods:
        if m not in METHOD_TAGS:
            raise ValidationError("methods", f"unknown method {m!r}; expected one of {METHOD_TAGS}")
    gamma = quasimode.linewidth
    nu0 = prof.coupling_rate
    tau = quasimode.coherence_time
    times = grid.times(tau)
    if times.size == 0:
        raise ValidationError("grid", "empty time grid")
    shape = shape or SpectralShape(gamma)
    if abs(prof.drive_frequency - 2.0) > 1e-12:
        log.warning("drive frequency %.6g is not the dominant resonance 2 omega0; closed forms "
                    "assume resonant driving", prof.drive_frequency)

    values = {}
    for m in methods:
        try:
            if m == "closed_weak":
                values[m] = photon_number_weak_closed(times, nu0, gamma)
            elif m == "closed_general":
                values[m] = photon_number_general_closed(times, nu0, gamma)
            elif m == "phenomenological":
                values[m] = phenomenological_model(times, nu0, gamma)
            elif m == "quadrature":
                _weak_guard(nu0, gamma)
                out = np.empty_like(times)
                for i, t in enumerate(times):
                    try:
                        out[i] = _quadrature_weak(t, nu0, gamma, shape, 1.0)
                    except NumericalError as exc:
                        exc.args = (f"t={t:.17g}: {exc.args[0]}",)
                        raise
                values[m] = out
            elif m == "ode_oracle":
                traj = bogoliubov_trajectory(0.0, cfg, prof, times, tol=ode_tolerance)
                values[m] = traj.photon_number
        except NumericalError as exc:
            exc.method = m
            exc.args = (f"method {m}: {exc.args[0]}",)
            raise

    metadata = {
        "version": version or __version__,
        "parameters": {
            "mode_index": quasimode.mode_index,
            "refractive_index": cfg.refractive_index_base,
            "epsilon": prof.amplitude,
            "Omega_over_omega0": prof.drive_frequency,
            "Q": quasimode.quality_factor,
            "gamma": gamma,
            "tau": tau,
            "nu0": nu0,
            "nu0_over_gamma": nu0 / gamma,
            "alpha": prof.bessel_argument,
        },
        "tolerances": {
            "quadrature_tolerance": shape.quadrature_tolerance,
            "cutoff_multiplier": shape.cutoff_multiplier,
            "ode_tolerance": ode_tolerance,
            "n_max": n_max,
        },
        "asymptotes": {
            "weak": asymptotic_pair_number(nu0, gamma, "weak"),
            "general": asymptotic_pair_number(nu0, gamma, "general"),
        },
        "time_unit": "1/omega0",
    }
    if "quadrature" in values and "closed_weak" in values:
        ref = values["closed_weak"]
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.where(ref > 0, np.abs(values["quadrature"] / ref - 1.0), 0.0)
        metadata["cross_check"] = {"quadrature_vs_closed_weak_max_rel_diff": float(np.max(rel))}
    return PhotonNumberSeries(times, values, tau, metadata)
