# analysis/__init__.py

from .sidebands import (
    ModulationDrive,
    SidebandSpectrum,
    beat_frequency,
    bessel_j_sequence,
    modulation_depth,
    sideband_power_relative,
    sideband_ratio_db,
    sideband_spectrum,
    total_sideband_power,
    vpi_from_sideband_ratio,
    vpi_from_sideband_ratio_exact,
)

__all__ = [
    "ModulationDrive",
    "SidebandSpectrum",
    "beat_frequency",
    "bessel_j_sequence",
    "modulation_depth",
    "sideband_power_relative",
    "sideband_ratio_db",
    "sideband_spectrum",
    "total_sideband_power",
    "vpi_from_sideband_ratio",
    "vpi_from_sideband_ratio_exact",
]
