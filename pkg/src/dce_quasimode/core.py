"""Domain types shared by the computation modules.

Unit convention: every computation works in dimensionless units where the
static-medium mode frequency is one, i.e. times are ``omega0 * t`` and
frequencies are measured in units of ``omega0``.  :class:`CavityConfig`
keeps the physical inputs and converts to and from this internal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import ValidationError

METHOD_TAGS = ("quadrature", "closed_weak", "closed_general", "phenomenological", "ode_oracle")


def _require_positive(name, value):
    if not (isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value)):
        raise ValidationError(name, f"must be a finite number, got {value!r}")
    if value <= 0:
        raise ValidationError(name, f"must be > 0, got {value!r}")


@dataclass(frozen=True)
class UnitScale:
    """Physical size of the internal time and length units."""

    time: float    # 1 / omega0
    length: float  # c / omega0


@dataclass(frozen=True)
class CavityConfig:
    """Static one-dimensional cavity filled with a nondispersive medium.

    Attributes:
        mode_index: axial mode number m >= 1.
        refractive_index_base: static refractive index n0.
        cavity_length: mirror separation L (any length unit).
        speed_of_light: c in units of cavity_length per time unit.
    """

    mode_index: int
    refractive_index_base: float
    cavity_length: float
    speed_of_light: float = 1.0
    wavenumber: float = field(init=False)
    base_frequency: float = field(init=False)

    def __post_init__(self):
        if isinstance(self.mode_index, bool) or not isinstance(self.mode_index, (int, np.integer)):
            raise ValidationError("mode_index", f"must be an integer, got {self.mode_index!r}")
        if self.mode_index < 1:
            raise ValidationError("mode_index", f"must be >= 1, got {self.mode_index}")
        _require_positive("refractive_index_base", self.refractive_index_base)
        _require_positive("cavity_length", self.cavity_length)
        _require_positive("speed_of_light", self.speed_of_light)
        object.__setattr__(self, "wavenumber", self._wavenumber())
        object.__setattr__(self, "base_frequency", self._omega0())

    def _wavenumber(self):
        return 2.0 * math.pi * self.mode_index / self.cavity_length

    def _omega0(self):
        return self._wavenumber() * self.speed_of_light / self.refractive_index_base

    def units(self) -> UnitScale:
        return UnitScale(time=1.0 / self.base_frequency,
                         length=self.speed_of_light / self.base_frequency)

    def to_internal(self) -> tuple["CavityConfig", UnitScale]:
        """Return the equivalent config with c = 1 and omega0 = 1, plus the scale."""
        scale = self.units()
        internal = CavityConfig(self.mode_index, self.refractive_index_base,
                                self.cavity_length / scale.length, 1.0)
        return internal, scale

    @staticmethod
    def from_internal(internal: "CavityConfig", scale: UnitScale) -> "CavityConfig":
        return CavityConfig(internal.mode_index, internal.refractive_index_base,
                            internal.cavity_length * scale.length,
                            internal.speed_of_light * scale.length / scale.time)


def new_cavity(m, L, n0, c=1.0) -> CavityConfig:
    """Build a cavity config; ``k_m = 2 pi m / L`` and ``omega0 = k_m c / n0``."""
    return CavityConfig(m, n0, L, c)


def normalized_cavity(m=1, n0=1.0) -> CavityConfig:
    """Cavity whose length is chosen so that omega0 = 1 with c = 1."""
    return CavityConfig(m, n0, 2.0 * math.pi * m / n0, 1.0)


@dataclass(frozen=True)
class QuasiMode:
    """Lossy cavity mode with Lorentzian linewidth ``gamma = omega_m / Q``."""

    mode_index: int
    center_frequency: float
    quality_factor: float
    linewidth: float = field(init=False)
    coherence_time: float = field(init=False)

    def __post_init__(self):
        _require_positive("center_frequency", self.center_frequency)
        _require_positive("Q", self.quality_factor)
        gamma = self.center_frequency / self.quality_factor
        object.__setattr__(self, "linewidth", gamma)
        object.__setattr__(self, "coherence_time", 1.0 / gamma)

    @classmethod
    def from_linewidth(cls, gamma, mode_index=1, center_frequency=1.0):
        _require_positive("gamma", gamma)
        return cls(mode_index, center_frequency, center_frequency / gamma)


def new_quasimode(cfg: CavityConfig, Q) -> QuasiMode:
    """Quasi-mode of ``cfg`` with quality factor Q.

    The medium is nondispersive, so the center frequency is omega0, i.e. 1
    in internal units.  Q must be finite: the lossless cavity is reached
    only as a limit.
    """
    _require_positive("Q", Q)
    return QuasiMode(cfg.mode_index, 1.0, float(Q))


@dataclass(frozen=True)
class ModulationProfile:
    """Sinusoidal index drive ``n(t) = n0 (1 + epsilon sin(Omega t))``.

    ``drive_frequency`` is in units of omega0.
    """

    amplitude: float
    drive_frequency: float
    coupling_rate: float = field(init=False)
    bessel_argument: float = field(init=False)

    def __post_init__(self):
        eps = self.amplitude
        if not (isinstance(eps, (int, float, np.floating)) and math.isfinite(eps)):
            raise ValidationError("epsilon", f"must be a finite number, got {eps!r}")
        if eps < 0:
            raise ValidationError("epsilon", f"must be >= 0, got {eps}")
        if eps >= 1:
            raise ValidationError("epsilon", f"must be < 1 (perturbative drive), got {eps}")
        _require_positive("Omega", self.drive_frequency)
        object.__setattr__(self, "coupling_rate", eps / 2.0)
        object.__setattr__(self, "bessel_argument", 2.0 * eps / self.drive_frequency)

    @classmethod
    def resonant(cls, epsilon):
        """Drive at the dominant resonance Omega = 2 omega0."""
        return cls(epsilon, 2.0)


@dataclass(frozen=True)
class BogoliubovPair:
    """Coefficients of ``A(t) = u A(0) + v A_partner^dagger(0)``."""

    u: complex = 1.0 + 0.0j
    v: complex = 0.0j

    @property
    def photon_number(self) -> float:
        return abs(self.v) ** 2

    @property
    def unitarity_defect(self) -> float:
        return abs(self.u) ** 2 - abs(self.v) ** 2 - 1.0


@dataclass(frozen=True)
class PhotonNumberSeries:
    """Mean pair number on a time grid, one array per computation method."""

    times: np.ndarray
    values: Mapping[str, np.ndarray]
    coherence_time: float
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or times.size == 0:
            raise ValidationError("times", "must be a nonempty 1-d array")
        if np.any(times < 0) or np.any(np.diff(times) <= 0):
            raise ValidationError("times", "must be nonnegative and strictly increasing")
        values = {}
        for tag, arr in self.values.items():
            if tag not in METHOD_TAGS:
                raise ValidationError("methods", f"unknown method tag {tag!r}")
            arr = np.asarray(arr, dtype=float)
            if arr.shape != times.shape:
                raise ValidationError(tag, "length does not match the time grid")
            if np.any(arr < 0) or not np.all(np.isfinite(arr)):
                raise ValidationError(tag, "photon numbers must be finite and >= 0")
            values[tag] = arr
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def times_over_tau(self):
        return self.times / self.coherence_time


@dataclass(frozen=True)
class TimeGrid:
    """Time grid measured in coherence times.

    Defaults span [1e-3 tau, 10 tau] logarithmically so both the quadratic
    onset and the plateau are resolved.
    """

    t_min_tau: float = 1e-3
    t_max_tau: float = 10.0
    points: int = 200
    spacing: str = "log"

    def __post_init__(self):
        if isinstance(self.points, bool) or not isinstance(self.points, (int, np.integer)) or self.points < 1:
            raise ValidationError("points", f"must be a positive integer, got {self.points!r}")
        if self.spacing not in ("log", "linear"):
            raise ValidationError("spacing", f"must be 'log' or 'linear', got {self.spacing!r}")
        if self.t_min_tau < 0 or (self.spacing == "log" and self.t_min_tau <= 0):
            raise ValidationError("t_min_tau", "must be > 0 (>= 0 for linear spacing)")
        if not self.t_max_tau > self.t_min_tau and self.points > 1:
            raise ValidationError("t_max_tau", "must exceed t_min_tau")

    def times(self, coherence_time):
        """Grid in internal time units (1/omega0)."""
        if self.points == 1:
            return np.array([self.t_min_tau * coherence_time])
        if self.spacing == "log":
            grid = np.geomspace(self.t_min_tau, self.t_max_tau, self.points)
        else:
            grid = np.linspace(self.t_min_tau, self.t_max_tau, self.points)
        return grid * coherence_time
