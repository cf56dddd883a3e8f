# utils/basetools/cavity_tool.py

import math
from typing import Optional

from pydantic import BaseModel, Field
from scipy.constants import c as SPEED_OF_LIGHT

from cavity import (
    OpticalCavity,
    cavity_q,
    critical_coupling_rate,
    finesse_from_spectrum,
    linewidth_from_finesse,
    sideband_enhancement,
    vpi_reduction,
)
from handlers.error_handler import InputError


class CavityInput(BaseModel):
    """Input for the optical-cavity enhancement calculation.

    The finesse comes from `finesse` or from fsr_hz / kappa_hz. With a zero SAW
    frequency only the ratio kappa_ex / kappa matters, so kappa may be omitted.
    """

    fsr_hz: Optional[float] = Field(None, gt=0, description="Free spectral range, Hz.")
    kappa_hz: Optional[float] = Field(None, gt=0, description="kappa/2pi, Hz.")
    kappa_ex_hz: Optional[float] = Field(
        None, ge=0, description="External coupling kappa_ex/2pi, Hz."
    )
    omega_hz: float = Field(0.0, ge=0, description="SAW frequency Omega/2pi, Hz.")
    finesse: Optional[float] = Field(None, gt=0, description="Cavity finesse.")
    vpi_V: Optional[float] = Field(None, gt=0, description="Single-pass V_pi, V.")
    critical: bool = Field(
        False, description="kappa_ex = kappa / 2; the default without kappa_ex."
    )
    wavelength_m: Optional[float] = Field(
        None, gt=0, description="Optical wavelength for Q, m."
    )


class CavityOutput(BaseModel):
    """Finesse, Q and the V_pi reduction by the cavity."""

    finesse: float = Field(..., description="Spectral finesse.")
    q: Optional[float] = Field(None, description="Optical quality factor.")
    enhancement_db: float = Field(..., description="Sideband power gain, dB.")
    vpi_reduced_V: Optional[float] = Field(None, description="V_pi in the cavity, V.")


def _finesse(input: CavityInput) -> float:
    if input.finesse is not None:
        return input.finesse
    if input.fsr_hz is None or input.kappa_hz is None:
        raise InputError("give --finesse, or both --fsr-hz and --kappa-hz")
    return finesse_from_spectrum(input.fsr_hz, input.kappa_hz)


def _linewidth_hz(input: CavityInput, finesse: float) -> Optional[float]:
    if input.kappa_hz is not None:
        return input.kappa_hz
    if input.fsr_hz is not None:
        return linewidth_from_finesse(input.fsr_hz, finesse)
    return None


def cavity_tool(input: CavityInput) -> CavityOutput:
    """
    Compute the sideband power enhancement of the waveguide cavity and the
    reduced half-wave voltage.
    """
    finesse = _finesse(input)
    measured = _linewidth_hz(input, finesse)
    linewidth = measured
    if linewidth is None:
        if input.omega_hz != 0.0:
            raise InputError("a nonzero --omega-hz needs --kappa-hz or --fsr-hz")
        # Omega = 0 depends only on kappa_ex / kappa; any unit linewidth will do
        linewidth = 1.0
    kappa = 2.0 * math.pi * linewidth

    if input.critical or input.kappa_ex_hz is None:
        # critical coupling unless an external rate is given
        kappa_ex = critical_coupling_rate(kappa)
    elif measured is not None:
        kappa_ex = 2.0 * math.pi * input.kappa_ex_hz
    else:
        raise InputError("--kappa-ex-hz needs --kappa-hz or --fsr-hz")

    cavity = OpticalCavity(
        fsr=finesse * linewidth,
        kappa=kappa,
        kappa_ex=kappa_ex,
        optical_frequency=(
            SPEED_OF_LIGHT / input.wavelength_m if input.wavelength_m else None
        ),
    )
    omega = 2.0 * math.pi * input.omega_hz
    enhancement = sideband_enhancement(cavity, omega)

    q = None
    if cavity.optical_frequency is not None and measured is not None:
        q = cavity_q(cavity.optical_frequency, measured)

    vpi_reduced = None
    if input.vpi_V is not None:
        vpi_reduced = vpi_reduction(input.vpi_V, finesse, omega, kappa, kappa_ex)

    return CavityOutput(
        finesse=finesse,
        q=q,
        enhancement_db=(
            10.0 * math.log10(enhancement) if enhancement > 0.0 else -math.inf
        ),
        vpi_reduced_V=vpi_reduced,
    )
