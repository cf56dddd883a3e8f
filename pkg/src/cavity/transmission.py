# cavity/transmission.py
"""Fit of a swept-laser transmission scan of the waveguide cavity.

The Airy line shape t_max / (1 + (2F/pi)^2 sin^2(pi (f - f_0) / FSR)) with
F = FSR / linewidth gives the free spectral range and kappa / 2 pi directly.
"""

from typing import Optional, Tuple

import lmfit
import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from scipy.signal import find_peaks, peak_widths

from cavity.optical_cavity import (
    OpticalCavity,
    cavity_q,
    critical_coupling_rate,
    finesse_from_spectrum,
)
from config.system_config import settings
from handlers.error_handler import InputError
from utils.logger import setup_logger

logger = setup_logger(__name__)

MIN_SCAN_POINTS = 16
PEAK_PROMINENCE = 0.5
FIT_TOL = 1e-12


def airy_transmission(f, f_0, fsr, linewidth, t_max):
    coefficient = (2.0 * fsr / (np.pi * linewidth)) ** 2
    return t_max / (1.0 + coefficient * np.sin(np.pi * (f - f_0) / fsr) ** 2)


class TransmissionModel(lmfit.model.Model):
    __doc__ = "Fabry-Perot transmission model" + lmfit.models.COMMON_INIT_DOC

    def __init__(self, *args, **kwargs):
        super().__init__(airy_transmission, *args, **kwargs)
        self.set_param_hint("fsr", min=0)
        self.set_param_hint("linewidth", min=0)
        self.set_param_hint("t_max", min=0)

    def guess(self, data, f=None, **kwargs):
        if f is None:
            return None
        f_0, fsr, linewidth, t_max = guess_transmission(f, data)
        params = self.make_params(f_0=f_0, fsr=fsr, linewidth=linewidth, t_max=t_max)
        params[f"{self.prefix}f_0"].set(min=f_0 - fsr / 2.0, max=f_0 + fsr / 2.0)
        return lmfit.models.update_param_vals(params, self.prefix, **kwargs)


def guess_transmission(
    f: NDArray[np.float64], t: NDArray[np.float64]
) -> Tuple[float, float, float, float]:
    """First peak, FSR, linewidth and peak height from the resolved resonances."""
    t_max = float(np.max(t))
    peaks, _ = find_peaks(t, prominence=PEAK_PROMINENCE * t_max)
    if peaks.size < 2:
        raise InputError(
            f"transmission scan must span at least two resonances, found {peaks.size}"
        )
    fsr = float(np.median(np.diff(f[peaks])))
    widths = peak_widths(t, peaks, rel_height=0.5)[0]
    linewidth = float(np.median(widths)) * float(np.mean(np.diff(f)))
    return float(f[peaks[0]]), fsr, linewidth, t_max


class TransmissionFit(BaseModel):
    """Fitted cavity spectrum in ordinary frequency units."""

    model_config = ConfigDict(frozen=True)

    f_0_hz: float = Field(..., description="Frequency of the first resonance, Hz.")
    fsr_hz: float = Field(..., description="Free spectral range, Hz.")
    linewidth_hz: float = Field(..., description="kappa / 2 pi, Hz.")
    t_max: float = Field(..., description="Peak transmission.")
    finesse: float = Field(..., description="FSR / linewidth.")
    q: Optional[float] = Field(None, description="Optical Q when the carrier is known.")
    rms_residual: float = Field(..., description="RMS of the fit residual.")
    converged: bool = Field(..., description="Whether the optimizer converged.")
    nfev: int = Field(0, description="Number of model evaluations.")

    def to_cavity(
        self,
        kappa_ex_hz: Optional[float] = None,
        optical_frequency_hz: Optional[float] = None,
    ) -> OpticalCavity:
        """Cavity with the fitted spectrum, critically coupled unless told otherwise."""
        if kappa_ex_hz is None:
            kappa_ex_hz = critical_coupling_rate(self.linewidth_hz)
        return OpticalCavity.from_hz(
            self.fsr_hz, self.linewidth_hz, kappa_ex_hz, optical_frequency_hz
        )


def _check_scan(frequencies: ArrayLike, transmission: ArrayLike):
    f = np.asarray(frequencies, dtype=float)
    t = np.asarray(transmission, dtype=float)
    if f.ndim != 1 or f.shape != t.shape:
        raise InputError("frequencies and transmission must be 1-D of equal length")
    if f.size < MIN_SCAN_POINTS:
        raise InputError(f"scan needs at least {MIN_SCAN_POINTS} points, got {f.size}")
    if not (np.all(np.isfinite(f)) and np.all(np.isfinite(t))):
        raise InputError("scan values must be finite")
    if not np.all(np.diff(f) > 0.0):
        raise InputError("frequencies must be strictly increasing")
    return f, t


def fit_transmission(
    frequencies: ArrayLike,
    transmission: ArrayLike,
    optical_frequency: Optional[float] = None,
    max_nfev: Optional[int] = None,
) -> TransmissionFit:
    """Least-squares Airy fit of a transmission scan covering two or more FSRs.

    `frequencies` may be absolute or detunings; Q is reported only when the
    optical carrier frequency is given.
    """
    f, t = _check_scan(frequencies, transmission)
    model = TransmissionModel()
    params = model.guess(t, f=f - f[0])
    result = model.fit(
        t,
        params,
        f=f - f[0],
        method="leastsq",
        max_nfev=max_nfev or settings.FIT_MAX_NFEV,
        fit_kws={"xtol": FIT_TOL, "ftol": FIT_TOL},
    )

    fsr = float(result.params["fsr"].value)
    linewidth = float(result.params["linewidth"].value)
    converged = bool(result.success) and fsr > 0.0 and linewidth > 0.0
    if not converged:
        logger.warning(f"Transmission fit did not converge: {result.message}")
        finesse = float("nan")
    else:
        finesse = finesse_from_spectrum(fsr, linewidth)
    q = None
    if optical_frequency is not None and converged:
        q = cavity_q(optical_frequency, linewidth)
    residual = np.asarray(result.residual, dtype=float)
    return TransmissionFit(
        f_0_hz=float(f[0]) + float(result.params["f_0"].value),
        fsr_hz=fsr,
        linewidth_hz=linewidth,
        t_max=float(result.params["t_max"].value),
        finesse=finesse,
        q=q,
        rms_residual=float(np.sqrt(np.mean(residual**2))),
        converged=converged,
        nfev=int(result.nfev),
    )
