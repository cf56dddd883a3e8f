# resonator/fitting.py

from typing import Literal, Optional, Tuple

import lmfit
import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from config.system_config import settings
from handlers.error_handler import InputError
from resonator.saw_resonator import SawResonator, Spectrum
from utils.logger import setup_logger

logger = setup_logger(__name__)

Coupling = Literal["under", "over"]
FIT_TOL = 1e-12


def reflection(f, f_0, gamma_in, gamma_ex):
    """S11 in ordinary frequency units: 1 - g_ex / (i (f - f_0) + (g_in + g_ex) / 2)."""
    return 1.0 - gamma_ex / (1j * (f - f_0) + (gamma_in + gamma_ex) / 2.0)


def reflection_power(f, f_0, gamma_in, gamma_ex):
    """|S11|^2, blind to swapping gamma_in and gamma_ex."""
    return np.abs(reflection(f, f_0, gamma_in, gamma_ex)) ** 2


class ReflectionModel(lmfit.model.Model):
    __doc__ = "one-port SAW reflection model" + lmfit.models.COMMON_INIT_DOC

    def __init__(self, complex_data: bool = False, *args, **kwargs):
        func = reflection if complex_data else reflection_power
        super().__init__(func, *args, **kwargs)
        self.complex_data = complex_data
        self.set_param_hint("gamma_in", min=0)
        self.set_param_hint("gamma_ex", min=0)

    def guess(self, data, f=None, coupling: Coupling = "under", **kwargs):
        if f is None:
            return None
        power = np.abs(data) ** 2 if self.complex_data else np.asarray(data)
        f_0, gamma_in, gamma_ex = guess_parameters(f, power, coupling)
        params = self.make_params(f_0=f_0, gamma_in=gamma_in, gamma_ex=gamma_ex)
        params[f"{self.prefix}f_0"].set(min=f.min(), max=f.max())
        return lmfit.models.update_param_vals(params, self.prefix, **kwargs)


def _half_level_crossing(f, power, start, step, level) -> float:
    index = start
    while 0 <= index + step < len(f) and power[index + step] <= level:
        index += step
    outer = index + step
    if not 0 <= outer < len(f):
        return float(f[index])
    # linear interpolation between the last point below and the first above
    span = power[outer] - power[index]
    fraction = (level - power[index]) / span if span > 0 else 0.0
    return float(f[index] + fraction * (f[outer] - f[index]))


def guess_parameters(
    f: NDArray[np.float64], power: NDArray[np.float64], coupling: Coupling = "under"
) -> Tuple[float, float, float]:
    """Center, internal and external width (Hz) from the dip of |S11|^2.

    The dip is the global minimum (lowest frequency on ties); the total width is
    the FWHM of 1 - |S11|^2 and the split follows the dip depth.
    """
    dip = int(np.argmin(power))
    floor = float(np.clip(power[dip], 0.0, 1.0))
    level = 1.0 - (1.0 - floor) / 2.0
    left = _half_level_crossing(f, power, dip, -1, level)
    right = _half_level_crossing(f, power, dip, 1, level)
    gamma = right - left
    if not gamma > 0.0:
        gamma = 2.0 * float(np.min(np.diff(f)))
    depth = np.sqrt(floor)
    larger, smaller = gamma * (1.0 + depth) / 2.0, gamma * (1.0 - depth) / 2.0
    if coupling == "under":
        return float(f[dip]), larger, smaller
    return float(f[dip]), smaller, larger


class ReflectionFit(BaseModel):
    """Fitted resonator parameters in ordinary frequency units."""

    model_config = ConfigDict(frozen=True)

    omega_hz: float = Field(..., description="Resonance frequency, Hz.")
    gamma_in_hz: float = Field(..., description="Internal loss rate / 2 pi, Hz.")
    gamma_ex_hz: float = Field(..., description="External coupling rate / 2 pi, Hz.")
    q: float = Field(..., description="Omega / Gamma with Gamma = Gamma_in + Gamma_ex.")
    rms_residual: float = Field(..., description="RMS of the fit residual.")
    converged: bool = Field(..., description="Whether the optimizer converged.")
    nfev: int = Field(0, description="Number of model evaluations.")

    def to_resonator(
        self, lambda_saw: float, length_l: float, width_w: float, density: float
    ) -> SawResonator:
        return SawResonator.from_hz(
            self.omega_hz,
            self.gamma_in_hz,
            self.gamma_ex_hz,
            lambda_saw=lambda_saw,
            length_l=length_l,
            width_w=width_w,
            density=density,
        )


def fit_reflection(
    s: Spectrum,
    initial_guess: Optional[Tuple[float, float, float]] = None,
    complex_fit: Optional[bool] = None,
    coupling: Coupling = "under",
    max_nfev: Optional[int] = None,
) -> ReflectionFit:
    """Levenberg-Marquardt fit of the reflection model to a spectrum.

    `initial_guess` is (omega_hz, gamma_in_hz, gamma_ex_hz). Magnitude data fit
    |S11|^2 and cannot tell under- from over-coupling, so `coupling` picks the
    reported branch. A fit that stops early is returned with converged=False.
    """
    complex_fit = (not s.magnitude_only) if complex_fit is None else complex_fit
    if complex_fit and s.magnitude_only:
        raise InputError("a complex fit needs complex S11 data")

    # fit on offsets from the dip so the center parameter is well scaled
    center = float(s.frequencies[int(np.argmin(np.abs(s.values)))])
    f = s.frequencies - center
    data = np.asarray(s.values, dtype=complex) if complex_fit else s.magnitude() ** 2

    model = ReflectionModel(complex_data=complex_fit)
    if initial_guess is None:
        params = model.guess(data, f=f, coupling=coupling)
    else:
        omega_hz, gamma_in_hz, gamma_ex_hz = initial_guess
        params = model.make_params(
            f_0=omega_hz - center, gamma_in=gamma_in_hz, gamma_ex=gamma_ex_hz
        )

    result = model.fit(
        data,
        params,
        f=f,
        method="leastsq",
        max_nfev=max_nfev or settings.FIT_MAX_NFEV,
        fit_kws={"xtol": FIT_TOL, "ftol": FIT_TOL},
    )
    gamma_in = float(result.params["gamma_in"].value)
    gamma_ex = float(result.params["gamma_ex"].value)
    if not complex_fit and (gamma_ex > gamma_in) == (coupling == "under"):
        gamma_in, gamma_ex = gamma_ex, gamma_in

    omega_hz = center + float(result.params["f_0"].value)
    finite = bool(np.all(np.isfinite([omega_hz, gamma_in, gamma_ex])))
    converged = bool(result.success) and finite
    if not converged:
        logger.warning(f"Reflection fit did not converge: {result.message}")
    residual = np.asarray(result.residual, dtype=float)
    return ReflectionFit(
        omega_hz=omega_hz,
        gamma_in_hz=gamma_in,
        gamma_ex_hz=gamma_ex,
        q=omega_hz / (gamma_in + gamma_ex),
        rms_residual=float(np.sqrt(np.mean(residual**2))),
        converged=converged,
        nfev=int(result.nfev),
    )
