"""Photon-pair creation from vacuum in a lossy cavity with a modulated medium."""

__version__ = "0.1.0"

from .core import (BogoliubovPair, CavityConfig, ModulationProfile, PhotonNumberSeries,
                   QuasiMode, TimeGrid, new_cavity, new_quasimode, normalized_cavity)
from .errors import (ConfigError, ConvergenceError, DCEError, IntegrationError,
                     NumericalError, RangeError, ValidationError)
from .photon_number import (asymptotic_pair_number, compute_series, phenomenological_model,
                            photon_number_general_closed, photon_number_quadrature_general,
                            photon_number_quadrature_weak, photon_number_series_oracle,
                            photon_number_weak_closed)
