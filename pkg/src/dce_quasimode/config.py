"""Run configuration: a flat ``key = value`` document with optional sections.

Example::

    # resonant drive, Q = 100
    [modulation]
    epsilon = 0.01
    drive = l0

    [quasimode]
    Q = 100

Keys are unique across sections, so a key may also appear before any
section header.  Unknown keys, duplicate keys and keys placed under the
wrong section are rejected.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field, fields

from .core import (METHOD_TAGS, CavityConfig, ModulationProfile, QuasiMode, TimeGrid,
                   normalized_cavity)
from .errors import ConfigError, ValidationError
from .spectral import SpectralShape

SECTIONS = ("cavity", "quasimode", "modulation", "grid", "numerics", "output")
DEFAULT_METHODS = ("closed_weak", "closed_general", "phenomenological")


def _key(section, default, kind, doc):
    return field(default=default, metadata={"section": section, "kind": kind, "doc": doc})


@dataclass(frozen=True)
class RunConfig:
    mode_index: int = _key("cavity", 1, "int", "axial mode number m")
    refractive_index: float = _key("cavity", 1.0, "float", "static refractive index n0")
    cavity_length: float | None = _key("cavity", None, "optfloat",
                                       "mirror separation; unset means omega0 = 1")
    speed_of_light: float = _key("cavity", 1.0, "float", "c in cavity_length units per time unit")
    Q: float | None = _key("quasimode", None, "optfloat", "quality factor (default 100)")
    gamma: float | None = _key("quasimode", None, "optfloat", "linewidth in units of omega0")
    epsilon: float = _key("modulation", 0.01, "float", "relative index modulation depth")
    drive: object = _key("modulation", "l0", "drive", "'l0' (Omega = 2 omega0) or Omega/omega0")
    t_min_tau: float = _key("grid", 1e-3, "float", "first grid time in coherence times")
    t_max_tau: float = _key("grid", 10.0, "float", "last grid time in coherence times")
    points: int = _key("grid", 200, "int", "number of grid points")
    spacing: str = _key("grid", "log", "str", "'log' or 'linear'")
    methods: tuple = _key("grid", DEFAULT_METHODS, "methods", "comma-separated method tags")
    quadrature_tolerance: float = _key("numerics", 1e-8, "float", "relative quadrature tolerance")
    cutoff_multiplier: float = _key("numerics", 1e4, "float", "spectral window |xi| <= K gamma")
    ode_tolerance: float = _key("numerics", 1e-9, "float", "relative ODE tolerance")
    l_max: int = _key("numerics", 8, "int", "Bessel series truncation")
    n_max: int = _key("numerics", 30, "int", "sinh^2 series truncation")
    directory: str = _key("output", "out", "str", "output directory")
    csv: bool = _key("output", True, "bool", "write series.csv")
    json: bool = _key("output", True, "bool", "write series.json")
    svg: bool = _key("output", False, "bool", "write series.svg")
    timestamp: bool = _key("output", True, "bool", "embed a timestamp in the SVG")

    def __post_init__(self):
        self.validate()

    # domain objects -------------------------------------------------------

    def cavity(self) -> CavityConfig:
        if self.cavity_length is None:
            return normalized_cavity(self.mode_index, self.refractive_index)
        return CavityConfig(self.mode_index, self.refractive_index, self.cavity_length,
                            self.speed_of_light)

    def quasimode(self) -> QuasiMode:
        if self.gamma is not None:
            return QuasiMode.from_linewidth(self.gamma, self.mode_index)
        return QuasiMode(self.mode_index, 1.0, 100.0 if self.Q is None else self.Q)

    def drive_frequency(self) -> float:
        return 2.0 if self.drive == "l0" else float(self.drive)

    def profile(self) -> ModulationProfile:
        return ModulationProfile(self.epsilon, self.drive_frequency())

    def grid(self) -> TimeGrid:
        return TimeGrid(self.t_min_tau, self.t_max_tau, self.points, self.spacing)

    def shape(self) -> SpectralShape:
        return SpectralShape(self.quasimode().linewidth, self.cutoff_multiplier,
                             self.quadrature_tolerance)

    def validate(self):
        if self.Q is not None and self.gamma is not None:
            raise ValidationError("Q", "give either Q or gamma, not both")
        if isinstance(self.drive, str) and self.drive != "l0":
            raise ValidationError("drive", f"expected 'l0' or a number, got {self.drive!r}")
        if not self.methods:
            raise ValidationError("methods", "at least one method is required")
        for m in self.methods:
            if m not in METHOD_TAGS:
                raise ValidationError("methods", f"unknown method {m!r}; expected one of {METHOD_TAGS}")
        for name in ("quadrature_tolerance", "cutoff_multiplier", "ode_tolerance"):
            if not getattr(self, name) > 0:
                raise ValidationError(name, "must be > 0")
        if self.l_max < 0:
            raise ValidationError("l_max", "must be >= 0")
        if self.n_max < 1:
            raise ValidationError("n_max", "must be >= 1")
        self.cavity()
        self.quasimode()
        self.profile()
        self.grid()

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)


KEYS = {f.name: f for f in fields(RunConfig)}


def convert_value(key, raw, line=None):
    """Parse the text of one value according to the key's declared kind."""
    kind = KEYS[key].metadata["kind"]
    text = raw.strip()
    try:
        if kind == "int":
            value = int(text)
        elif kind == "float":
            value = float(text)
        elif kind == "optfloat":
            value = None if text.lower() in ("", "none") else float(text)
        elif kind == "bool":
            low = text.lower()
            if low not in ("true", "false", "yes", "no", "1", "0", "on", "off"):
                raise ValueError(text)
            value = low in ("true", "yes", "1", "on")
        elif kind == "drive":
            value = "l0" if text.lower() == "l0" else float(text)
        elif kind == "methods":
            value = tuple(m.strip() for m in text.split(",") if m.strip())
        else:
            value = text
    except ValueError:
        raise ConfigError(key, f"cannot parse {raw.strip()!r} as {kind}", line) from None
    if isinstance(value, float) and not math.isfinite(value):
        raise ConfigError(key, "must be finite", line)
    return value


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document."""
    section = None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("section", f"malformed header {line!r}", lineno)
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise ConfigError("section", f"unknown section [{section}]", lineno)
            continue
        # comma-separated pairs on one line are allowed outside [grid] methods
        for item in _split_items(line):
            if "=" not in item:
                raise ConfigError("syntax", f"expected 'key = value', got {item!r}", lineno)
            key, value = (s.strip() for s in item.split("=", 1))
            if key not in KEYS:
                raise ConfigError(key, "unknown key", lineno)
            home = KEYS[key].metadata["section"]
            if section is not None and section != home:
                raise ConfigError(key, f"belongs in [{home}], not [{section}]", lineno)
            if key in values:
                raise ConfigError(key, "duplicate key", lineno)
            values[key] = convert_value(key, value, lineno)
    return RunConfig(**values)


def _split_items(line):
    if "," not in line:
        return [line]
    # a comma list belongs to the value unless another "key=" follows it
    items = []
    for chunk in line.split(","):
        if "=" in chunk or not items:
            items.append(chunk)
        else:
            items[-1] += "," + chunk
    return [i.strip() for i in items if i.strip()]


def _format(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(value)
    return str(value)


def serialize_config(cfg: RunConfig) -> str:
    """Render a config document that parses back to an equal RunConfig."""
    lines = []
    for section in SECTIONS:
        lines.append(f"[{section}]")
        for f in fields(cfg):
            if f.metadata["section"] == section:
                lines.append(f"{f.name} = {_format(getattr(cfg, f.name))}")
        lines.append("")
    return "\n".join(lines)


def config_as_dict(cfg: RunConfig) -> dict:
    out = {}
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        out[f.name] = list(v) if isinstance(v, tuple) else v
    return out
