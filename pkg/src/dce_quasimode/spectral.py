"""Lorentzian quasi-mode profile and quadrature over the linewidth variable.

The frequency offset ``xi = omega - omega_m`` is integrated over a finite
window ``|xi| <= K gamma``.  The Lorentzian tail mass outside the window is
``1 - (2/pi) arctan(K) ~ 2/(pi K)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import NumericalError, ValidationError

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15)
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[9:15:2] = _WG[2::-1]

_CHUNK = 1 << 15  # panels evaluated per vectorized call


@dataclass(frozen=True)
class SpectralShape:
    """Lorentzian line of half-width ``linewidth`` on the window |xi| <= K gamma."""

    linewidth: float
    cutoff_multiplier: float = 1e4
    quadrature_tolerance: float = 1e-8
    max_refinements: int = 40

    def __post_init__(self):
        if not self.linewidth > 0:
            raise ValidationError("gamma", f"must be > 0, got {self.linewidth}")
        if not self.cutoff_multiplier > 0:
            raise ValidationError("cutoff_multiplier", f"must be > 0, got {self.cutoff_multiplier}")
        if not self.quadrature_tolerance > 0:
            raise ValidationError("quadrature_tolerance", "must be > 0")

    @property
    def window(self):
        return self.cutoff_multiplier * self.linewidth

    @property
    def tail_mass(self):
        """Normalized Lorentzian weight lying outside the window."""
        return 1.0 - 2.0 / math.pi * math.atan(self.cutoff_multiplier)


class QuadratureResult(NamedTuple):
    value: complex
    error: float


def lorentzian_shape(xi, gamma):
    """Spectral amplitude ``sqrt(2 gamma) / sqrt(xi^2 + gamma^2)``."""
    if not gamma > 0:
        raise ValidationError("gamma", f"must be > 0, got {gamma}")
    xi = np.asarray(xi, dtype=float)
    return np.sqrt(2.0 * gamma) / np.hypot(xi, gamma)


def lorentzian_weight(xi, gamma):
    """``|g(xi)|^2 / 2 pi``, the measure used for every linewidth average."""
    return gamma / (math.pi * (np.square(xi) + gamma * gamma))


def lorentzian_fourier(t, gamma):
    """Closed form of ``int exp(-i w t) / (w^2 + gamma^2) dw / 2pi``."""
    if not gamma > 0:
        raise ValidationError("gamma", f"must be > 0, got {gamma}")
    return np.exp(-gamma * np.abs(t)) / (2.0 * gamma)


def fourier_integral_oracle(t, gamma, dps=20):
    """Evaluate the Lorentzian Fourier integral over the whole real line.

    Independent of the windowed quadrature: mpmath tanh-sinh on a
    non-oscillatory head plus ``quadosc`` (zero-to-zero summation with
    extrapolation) on the infinite tail.  The odd sine part vanishes, so
    only the cosine integral over [0, inf) is computed.
    """
    import mpmath as mp

    if not gamma > 0:
        raise ValidationError("gamma", f"must be > 0, got {gamma}")
    with mp.workdps(dps):
        g = mp.mpf(gamma)
        w = abs(mp.mpf(t))
        if w == 0:
            val = mp.quad(lambda x: 1 / (x * x + g * g), [0, g, mp.inf])
        else:
            f = lambda x: mp.cos(w * x) / (x * x + g * g)
            # head covers the Lorentzian peak and at least four periods
            head_end = max(20 * g, 8 * mp.pi / w)
            head_end = mp.ceil(head_end * w / mp.pi) * mp.pi / w
            n_panels = int(min(200, max(10, head_end * w / mp.pi)))
            head = mp.quad(f, [0, g] + list(mp.linspace(2 * g, head_end, n_panels)))
            tail = mp.quadosc(f, [head_end, mp.inf], omega=w)
            val = head + tail
        return float(val / mp.pi)


def _initial_breaks(window, gamma, frequency):
    """Panel edges on [0, window]: geometric around the peak, capped width."""
    edges = [0.0]
    x = gamma / 8.0
    while x < window:
        edges.append(x)
        x *= 2.0
    edges.append(window)
    edges = np.asarray(edges)
    if frequency > 0:
        max_width = math.pi / (2.0 * frequency)
        counts = np.maximum(1, np.ceil(np.diff(edges) / max_width).astype(np.int64))
        pieces = [np.linspace(a, b, n + 1)[:-1] for a, b, n in zip(edges[:-1], edges[1:], counts)]
        edges = np.concatenate(pieces + [np.array([window])])
    return edges


def _panel_sums(f, a, b):
    """Gauss (coarse) and Kronrod (fine) estimates on each panel."""
    coarse = np.empty(a.size, dtype=complex)
    fine = np.empty(a.size, dtype=complex)
    for lo in range(0, a.size, _CHUNK):
        half = 0.5 * (b[lo:lo + _CHUNK] - a[lo:lo + _CHUNK])
        mid = 0.5 * (a[lo:lo + _CHUNK] + b[lo:lo + _CHUNK])
        xs = mid[:, None] + half[:, None] * KRONROD_NODES
        ys = f(xs.ravel()).reshape(xs.shape)
        coarse[lo:lo + _CHUNK] = half * (ys @ GAUSS_WEIGHTS)
        fine[lo:lo + _CHUNK] = half * (ys @ KRONROD_WEIGHTS)
    return coarse, fine


def adaptive_panels(f, edges, rtol, max_refinements=40):
    """Globally adaptive panel quadrature of a vectorized ``f`` over ``edges``.

    Each panel is estimated with a 7-point Gauss rule and its 15-point
    Kronrod extension; their difference is the error estimate.  Panels whose
    error exceeds their share of the budget are bisected until the summed
    error is below ``rtol * |total|`` (or the roundoff floor).
    """
    a = np.asarray(edges[:-1], dtype=float)
    b = np.asarray(edges[1:], dtype=float)
    done_val = 0.0 + 0.0j
    done_err = 0.0
    done_abs = 0.0
    for _ in range(max_refinements + 1):
        coarse, fine = _panel_sums(f, a, b)
        err = np.abs(fine - coarse)
        total = done_val + fine.sum()
        abs_sum = done_abs + np.abs(fine).sum()
        err_sum = done_err + err.sum()
        target = max(rtol * abs(total), 64 * np.finfo(float).eps * abs_sum)
        if err_sum <= target:
            return QuadratureResult(complex(total), float(err_sum))
        share = target / max(a.size, 1)
        bad = err > share
        done_val += fine[~bad].sum()
        done_err += err[~bad].sum()
        done_abs += np.abs(fine[~bad]).sum()
        mid = 0.5 * (a[bad] + b[bad])
        a = np.concatenate([a[bad], mid])
        b = np.concatenate([mid, b[bad]])
        order = np.argsort(a, kind="stable")
        a, b = a[order], b[order]
    raise NumericalError(
        f"quadrature did not converge after {max_refinements} refinements "
        f"(estimate {complex(total):.6g}, error {err_sum:.3g})",
        estimate=complex(total), error=float(err_sum))


def integrate_over_linewidth(integrand: Callable, shape: SpectralShape, frequency=0.0):
    """Average ``integrand(xi)`` over the Lorentzian line.

    Computes ``int integrand(xi) 2 gamma / (xi^2 + gamma^2) dxi / 2pi`` over
    ``|xi| <= K gamma``.  ``integrand`` must accept and return numpy arrays.
    ``frequency`` is the largest angular frequency (in xi) of any oscillating
    factor; panels are kept narrower than a quarter of that period.
    """
    gamma = shape.linewidth
    right = _initial_breaks(shape.window, gamma, abs(frequency))
    edges = np.concatenate([-right[:0:-1], right])

    def weighted(xi):
        return np.asarray(integrand(xi), dtype=complex) * lorentzian_weight(xi, gamma)

    return adaptive_panels(weighted, edges, shape.quadrature_tolerance, shape.max_refinements)


def shape_norm(shape: SpectralShape) -> float:
    """Numerical ``int |g|^2 dxi / 2pi`` over the truncated window."""
    res = integrate_over_linewidth(lambda xi: np.ones_like(xi), shape)
    return res.value.real
