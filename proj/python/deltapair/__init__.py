"""Positron spectra and pair creation probabilities for a photon colliding
with a train of delta pulses."""

from ._core import (
    DEFAULT_ALPHA,
    ConfigError,
    PulseTrain,
    __version__,
    alternating_four_train,
    breakdown,
    density,
    density_fourpulse,
    density_opposite,
    density_samesign,
    density_single,
    dp_du,
    grid,
    normalize_config,
    opposite_sign_train,
    run,
    same_sign_train,
    single_pulse_train,
    total_probability,
)

__all__ = [
    "DEFAULT_ALPHA",
    "ConfigError",
    "PulseTrain",
    "__version__",
    "alternating_four_train",
    "breakdown",
    "density",
    "density_fourpulse",
    "density_opposite",
    "density_samesign",
    "density_single",
    "dp_du",
    "grid",
    "normalize_config",
    "opposite_sign_train",
    "run",
    "same_sign_train",
    "single_pulse_train",
    "total_probability",
]
