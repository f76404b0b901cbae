"""Time-dependent refractive index drive and its phase bookkeeping.

All quantities are in internal units (omega0 = 1).  The phase origin is
fixed by ``phi(0) = epsilon / Omega``; any other constant would only shift
the pair phase, which does not affect photon numbers.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j
from .core import CavityConfig, ModulationProfile
from .errors import ValidationError

OMEGA0 = 1.0


def refractive_index(t, cfg: CavityConfig, prof: ModulationProfile):
    """``n0 (1 + epsilon sin(Omega t))``."""
    if prof.amplitude >= 1:
        raise ValidationError("epsilon", "must be < 1")
    t = np.asarray(t, dtype=float)
    return cfg.refractive_index_base * (1.0 + prof.amplitude * np.sin(prof.drive_frequency * t))


def modulation_rate(t, prof: ModulationProfile, exact=False):
    """Rate ``f(t) = (1/2n) dn/dt``.

    The default is the leading-order form ``(epsilon Omega / 2) cos(Omega t)``.
    ``exact=True`` keeps the ``1 + epsilon sin`` denominator.
    """
    t = np.asarray(t, dtype=float)
    eps, om = prof.amplitude, prof.drive_frequency
    rate = 0.5 * eps * om * np.cos(om * t)
    if exact:
        rate = rate / (1.0 + eps * np.sin(om * t))
    return rate


def _exact_phase_integral(s, eps):
    """``int_0^s du / (1 + eps sin u)`` with branch unwrapping."""
    root = math.sqrt(1.0 - eps * eps)
    period = 2.0 * math.pi / root

    def primitive(u):
        return 2.0 / root * np.arctan((np.tan(0.5 * u) + eps) / root)

    s = np.asarray(s, dtype=float)
    k = np.floor((s + math.pi) / (2.0 * math.pi))
    reduced = s - 2.0 * math.pi * k
    return k * period + primitive(reduced) - primitive(0.0)


def dynamical_phase(t, cfg: CavityConfig, prof: ModulationProfile, exact=False):
    """Accumulated mode phase ``int omega_m(t') dt'``.

    Leading order: ``omega0 t + (epsilon omega0 / Omega) cos(Omega t)``.
    ``exact=True`` integrates ``omega0 / (1 + epsilon sin)`` in closed form,
    with the same value at t = 0.
    """
    t = np.asarray(t, dtype=float)
    eps, om = prof.amplitude, prof.drive_frequency
    if not exact:
        return OMEGA0 * t + eps * OMEGA0 / om * np.cos(om * t)
    return eps * OMEGA0 / om + OMEGA0 / om * _exact_phase_integral(om * t, eps)


def phase_factor_series(t, alpha, l_max, drive_frequency):
    """Truncated Bessel expansion of ``exp(2 i phi(t))``.

    ``sum_{|l| <= l_max} i^l J_l(alpha) exp(i (2 omega0 + l Omega) t)``.
    """
    if l_max < 0:
        raise ValidationError("l_max", "must be >= 0")
    t = np.asarray(t, dtype=float)
    total = np.zeros(t.shape, dtype=complex)
    # smallest terms first
    for l in sorted(range(-l_max, l_max + 1), key=lambda k: (-abs(k), k)):
        total += (1j ** l) * bessel_j(l, alpha) * np.exp(1j * (2.0 * OMEGA0 + l * drive_frequency) * t)
    return total


def bessel_small_arg(l, alpha):
    """Small-argument estimate ``alpha^l / (2^l l!)`` of J_l, for ranking only."""
    if l < 0:
        raise ValidationError("l", "must be >= 0")
    return alpha ** l / (2.0 ** l * math.factorial(l))


def coupling(t, xi, cfg: CavityConfig, prof: ModulationProfile, exact=False):
    """Pair coupling ``f(t) exp(2 i (phi(t) + xi t))``."""
    t = np.asarray(t, dtype=float)
    phase = dynamical_phase(t, cfg, prof, exact=exact) + xi * t
    return modulation_rate(t, prof, exact=exact) * np.exp(2j * phase)


@dataclass(frozen=True)
class ResonanceBranch:
    """One solution of ``2 omega0 + (l +/- 1) Omega = 0``."""

    harmonic_order: int
    sign: int
    resonant_frequency: float
    bessel_argument: float
    bessel_weight: float


def resonance_table(cfg: CavityConfig, prof: ModulationProfile, l_range):
    """Physical resonant drive frequencies, strongest first.

    For each ``l`` and sign, ``Omega_l = -2 omega0 / (l + sign)`` and
    ``alpha_l = -epsilon (l + sign)``.  Branches with ``l + sign = 0`` or
    ``Omega_l <= 0`` are dropped.  Ranking uses the small-argument weight of
    the stationary term ``J_l(alpha_l)``; ties fall back to increasing |l|.
    """
    eps = prof.amplitude
    branches = []
    for l in l_range:
        for sign in (-1, 1):
            d = l + sign
            if d >= 0:
                continue
            omega = -2.0 * OMEGA0 / d
            alpha = -eps * d
            weight = bessel_small_arg(abs(l), alpha)
            branches.append(ResonanceBranch(l, sign, omega, alpha, weight))
    branches.sort(key=lambda b: (-b.bessel_weight, abs(b.harmonic_order), b.harmonic_order, b.sign))
    return branches


RESONANCE_COLUMNS = ("l", "sign", "Omega_over_omega0", "alpha", "bessel_weight")


def resonance_csv(branches) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESONANCE_COLUMNS)
    for b in branches:
        writer.writerow([b.harmonic_order, b.sign, f"{b.resonant_frequency:.17g}",
                         f"{b.bessel_argument:.17g}", f"{b.bessel_weight:.17g}"])
    return buf.getvalue()
