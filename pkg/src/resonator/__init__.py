# resonator/__init__.py

from .fitting import ReflectionFit, ReflectionModel, fit_reflection, guess_parameters
from .saw_resonator import (
    SawResonator,
    Spectrum,
    drive_power,
    phonon_number,
    reflection_s11,
    reflection_spectrum,
    resonance_frequency,
    resonator_length,
    saw_amplitude,
    zpf_amplitude,
)

__all__ = [
    "ReflectionFit",
    "ReflectionModel",
    "SawResonator",
    "Spectrum",
    "drive_power",
    "fit_reflection",
    "guess_parameters",
    "phonon_number",
    "reflection_s11",
    "reflection_spectrum",
    "resonance_frequency",
    "resonator_length",
    "saw_amplitude",
    "zpf_amplitude",
]
