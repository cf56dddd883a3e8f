# utils/basetools/s11_fit_tool.py

from pydantic import BaseModel, Field

from resonator import fit_reflection
from resonator.fitting import Coupling
from utils.basetools.file_reading_tool import read_spectrum_file


class S11FitInput(BaseModel):
    """Input for fitting a measured reflection spectrum."""

    file_path: str = Field(
        ..., description="Spectrum CSV (freq_hz,mag or freq_hz,re,im)."
    )
    complex_fit: bool = Field(False, description="Fit complex S11, not |S11|^2.")
    coupling: Coupling = Field(
        "under", description="Branch reported for magnitude-only data."
    )


class S11FitOutput(BaseModel):
    """Resonator parameters recovered from the spectrum."""

    omega_hz: float = Field(..., description="Resonance frequency, Hz.")
    gamma_in_hz: float = Field(..., description="Internal loss rate / 2 pi, Hz.")
    gamma_ex_hz: float = Field(..., description="External coupling rate / 2 pi, Hz.")
    q: float = Field(..., description="Loaded quality factor.")
    rms_residual: float = Field(..., description="RMS of the fit residual.")
    converged: bool = Field(..., description="Whether the optimizer converged.")


def s11_fit_tool(input: S11FitInput) -> S11FitOutput:
    """
    Read a spectrum CSV and fit the one-port reflection model to it.
    """
    spectrum = read_spectrum_file(input.file_path).spectrum
    fit = fit_reflection(
        spectrum, complex_fit=input.complex_fit, coupling=input.coupling
    )
    return S11FitOutput(
        omega_hz=fit.omega_hz,
        gamma_in_hz=fit.gamma_in_hz,
        gamma_ex_hz=fit.gamma_ex_hz,
        q=fit.q,
        rms_residual=fit.rms_residual,
        converged=fit.converged,
    )
