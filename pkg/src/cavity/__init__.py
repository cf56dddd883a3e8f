# cavity/__init__.py

from .optical_cavity import (
    OpticalCavity,
    cavity_q,
    critical_coupling_rate,
    effective_interaction_length,
    finesse_from_reflectivity,
    finesse_from_spectrum,
    fsr_from_geometry,
    linewidth_from_finesse,
    max_finesse_from_loss,
    sideband_enhancement,
    vpi_reduction,
)
from .transmission import (
    TransmissionFit,
    TransmissionModel,
    airy_transmission,
    fit_transmission,
)

__all__ = [
    "OpticalCavity",
    "TransmissionFit",
    "TransmissionModel",
    "airy_transmission",
    "cavity_q",
    "critical_coupling_rate",
    "effective_interaction_length",
    "finesse_from_reflectivity",
    "finesse_from_spectrum",
    "fit_transmission",
    "fsr_from_geometry",
    "linewidth_from_finesse",
    "max_finesse_from_loss",
    "sideband_enhancement",
    "vpi_reduction",
]
