# resonator/saw_resonator.py
"""One-port SAW resonator: reflection model and the drive -> amplitude chain."""

import math
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.constants import hbar

from config.system_config import settings
from handlers.error_handler import InputError

MIN_SPECTRUM_POINTS = 8

Scalar = Union[float, NDArray[np.float64]]


class SawResonator(BaseModel):
    """Resonance, loss rates (rad/s) and mode geometry (m) of the SAW cavity."""

    model_config = ConfigDict(frozen=True)

    omega: float = Field(..., gt=0, description="Resonance angular frequency, rad/s.")
    gamma_in: float = Field(..., ge=0, description="Internal loss rate, rad/s.")
    gamma_ex: float = Field(..., ge=0, description="External coupling rate, rad/s.")
    lambda_saw: float = Field(..., gt=0, description="SAW wavelength, m.")
    length_l: float = Field(..., gt=0, description="Resonator length, m.")
    width_w: float = Field(..., gt=0, description="Aperture along the optical axis, m.")
    density: float = Field(..., gt=0, description="Substrate density, kg/m^3.")

    @model_validator(mode="after")
    def _check_total_loss(self) -> "SawResonator":
        if not self.gamma > 0.0:
            raise ValueError("total loss rate gamma_in + gamma_ex must be positive")
        return self

    @classmethod
    def from_hz(
        cls,
        omega_hz: float,
        gamma_in_hz: float,
        gamma_ex_hz: float,
        lambda_saw: float,
        length_l: float,
        width_w: float,
        density: float,
    ) -> "SawResonator":
        """Build from ordinary frequencies (cycles/s)."""
        two_pi = 2.0 * math.pi
        return cls(
            omega=two_pi * omega_hz,
            gamma_in=two_pi * gamma_in_hz,
            gamma_ex=two_pi * gamma_ex_hz,
            lambda_saw=lambda_saw,
            length_l=length_l,
            width_w=width_w,
            density=density,
        )

    @property
    def gamma(self) -> float:
        return self.gamma_in + self.gamma_ex

    @property
    def q(self) -> float:
        return self.omega / self.gamma

    @property
    def mode_volume(self) -> float:
        return self.lambda_saw * self.length_l * self.width_w


class Spectrum(BaseModel):
    """Measured reflection: complex S11, or |S11| when `magnitude_only`."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frequencies: np.ndarray = Field(..., description="Frequencies, Hz.")
    values: np.ndarray = Field(..., description="S11 samples.")
    magnitude_only: bool = Field(False, description="Values hold |S11| only.")

    @field_validator("frequencies", mode="before")
    @classmethod
    def _check_frequencies(cls, value: ArrayLike) -> NDArray[np.float64]:
        frequencies = np.array(value, dtype=float)
        if frequencies.ndim != 1 or frequencies.size < MIN_SPECTRUM_POINTS:
            raise ValueError(
                f"spectrum needs at least {MIN_SPECTRUM_POINTS} points, "
                f"got {frequencies.size}"
            )
        if not np.all(np.isfinite(frequencies)):
            raise ValueError("frequencies must be finite")
        if not np.all(np.diff(frequencies) > 0.0):
            raise ValueError("frequencies must be strictly increasing")
        frequencies.setflags(write=False)
        return frequencies

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value: ArrayLike) -> NDArray:
        values = np.array(value)
        if not np.iscomplexobj(values):
            values = values.astype(float)
        if values.ndim != 1 or not np.all(np.isfinite(values)):
            raise ValueError("values must be a finite 1-D array")
        values.setflags(write=False)
        return values

    @model_validator(mode="after")
    def _check_lengths(self) -> "Spectrum":
        if self.values.shape != self.frequencies.shape:
            raise ValueError(
                f"{self.frequencies.size} frequencies but {self.values.size} values"
            )
        if self.magnitude_only and np.iscomplexobj(self.values):
            raise ValueError("magnitude-only spectrum must hold real values")
        return self

    def magnitude(self) -> NDArray[np.float64]:
        return np.abs(self.values)


def resonance_frequency(v: float, lambda_saw: float) -> float:
    """Resonance frequency (Hz) of a SAW of velocity v and wavelength lambda."""
    if not (v > 0.0 and lambda_saw > 0.0):
        raise InputError("velocity and wavelength must be positive")
    return v / lambda_saw


def reflection_s11(omega: Scalar, r: SawResonator) -> Union[complex, NDArray]:
    """S11(w) = 1 - Gamma_ex / (i (w - Omega) + Gamma / 2)."""
    detuning = np.asarray(omega, dtype=float) - r.omega
    s11 = 1.0 - r.gamma_ex / (1j * detuning + r.gamma / 2.0)
    return complex(s11) if np.ndim(s11) == 0 else s11


def zpf_amplitude(r: SawResonator) -> float:
    """Zero-point displacement sqrt(hbar / (2 rho V_mode Omega))."""
    return math.sqrt(hbar / (2.0 * r.density * r.mode_volume * r.omega))


def drive_power(voltage: float, z0: Optional[float] = None) -> float:
    """Power delivered by a source of amplitude `voltage` into Z0: V^2 / (2 Z0)."""
    z0 = settings.Z0_OHM if z0 is None else z0
    if not z0 > 0.0:
        raise InputError(f"reference impedance must be positive, got {z0}")
    return voltage**2 / (2.0 * z0)


def phonon_number(power: float, detuning: float, r: SawResonator) -> float:
    """Intracavity phonons for drive `power` (W) at `detuning` (rad/s)."""
    if power < 0.0:
        raise InputError(f"drive power must be non-negative, got {power}")
    lorentzian = r.gamma_ex / (detuning**2 + r.gamma**2 / 4.0)
    return lorentzian * power / (hbar * r.omega)


def saw_amplitude(power: float, detuning: float, r: SawResonator) -> float:
    """Peak surface displacement U_0 = U_zpf sqrt(N)."""
    return zpf_amplitude(r) * math.sqrt(phonon_number(power, detuning, r))


def resonator_length(mirror_gap: float, penetration_depth: float = 0.0) -> float:
    """Effective length: mirror gap plus one penetration depth per mirror."""
    if not mirror_gap > 0.0 or penetration_depth < 0.0:
        raise InputError("mirror gap must be positive and penetration non-negative")
    return mirror_gap + 2.0 * penetration_depth


def reflection_spectrum(
    r: SawResonator,
    frequencies_hz: ArrayLike,
    noise: float = 0.0,
    seed: Optional[int] = None,
    magnitude_only: bool = True,
) -> Spectrum:
    """Synthesize a reflection spectrum, optionally with Gaussian noise."""
    frequencies = np.asarray(frequencies_hz, dtype=float)
    s11 = np.asarray(reflection_s11(2.0 * np.pi * frequencies, r))
    rng = np.random.default_rng(seed)
    if magnitude_only:
        values = np.abs(s11)
        if noise:
            values = values + noise * rng.standard_normal(values.size)
    else:
        values = s11
        if noise:
            values = values + noise * (
                rng.standard_normal(values.size) + 1j * rng.standard_normal(values.size)
            )
    return Spectrum(
        frequencies=frequencies, values=values, magnitude_only=magnitude_only
    )
