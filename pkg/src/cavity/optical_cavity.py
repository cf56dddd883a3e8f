# cavity/optical_cavity.py
"""Waveguide Fabry-Perot cavity around the SAW interaction region.

Two finesse conventions live here and are kept apart by name: the spectral
finesse FSR / (kappa / 2 pi), and the loss-limited finesse 2 pi / delta_rt
with delta_rt the fractional round-trip power loss.
"""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.constants import c as SPEED_OF_LIGHT

from handlers.error_handler import DegeneratePhysicsError, InputError


class OpticalCavity(BaseModel):
    """Cavity spectrum: FSR in Hz, loss rates in rad/s."""

    model_config = ConfigDict(frozen=True)

    fsr: float = Field(..., gt=0, description="Free spectral range, Hz.")
    kappa: float = Field(..., gt=0, description="Total dissipation rate, rad/s.")
    kappa_ex: float = Field(..., ge=0, description="External coupling rate, rad/s.")
    optical_frequency: Optional[float] = Field(
        None, gt=0, description="Optical carrier frequency, Hz."
    )

    @model_validator(mode="after")
    def _check_coupling(self) -> "OpticalCavity":
        if self.kappa_ex > self.kappa:
            raise ValueError("kappa_ex cannot exceed the total dissipation kappa")
        return self

    @classmethod
    def from_hz(
        cls,
        fsr_hz: float,
        kappa_hz: float,
        kappa_ex_hz: float,
        optical_frequency_hz: Optional[float] = None,
    ) -> "OpticalCavity":
        return cls(
            fsr=fsr_hz,
            kappa=2.0 * math.pi * kappa_hz,
            kappa_ex=2.0 * math.pi * kappa_ex_hz,
            optical_frequency=optical_frequency_hz,
        )

    @classmethod
    def critically_coupled(
        cls,
        fsr_hz: float,
        kappa_hz: float,
        optical_frequency_hz: Optional[float] = None,
    ) -> "OpticalCavity":
        kappa = 2.0 * math.pi * kappa_hz
        return cls(
            fsr=fsr_hz,
            kappa=kappa,
            kappa_ex=critical_coupling_rate(kappa),
            optical_frequency=optical_frequency_hz,
        )

    @property
    def linewidth_hz(self) -> float:
        return self.kappa / (2.0 * math.pi)

    @property
    def finesse(self) -> float:
        return finesse_from_spectrum(self.fsr, self.linewidth_hz)

    @property
    def q(self) -> float:
        if self.optical_frequency is None:
            raise InputError("cavity Q needs the optical frequency")
        return cavity_q(self.optical_frequency, self.linewidth_hz)


def finesse_from_spectrum(fsr: float, kappa_over_2pi: float) -> float:
    """Spectral finesse FSR / linewidth."""
    if not (fsr > 0.0 and kappa_over_2pi > 0.0):
        raise InputError("FSR and linewidth must be positive")
    return fsr / kappa_over_2pi


def fsr_from_geometry(n: float, length: float) -> float:
    """Free spectral range c / (2 n L) of a linear cavity."""
    if not n > 1.0:
        raise InputError(f"refractive index must exceed 1, got {n}")
    if not length > 0.0:
        raise InputError(f"cavity length must be positive, got {length}")
    return SPEED_OF_LIGHT / (2.0 * n * length)


def cavity_q(optical_frequency: float, kappa_over_2pi: float) -> float:
    """Q = 2 pi nu / kappa."""
    if not (optical_frequency > 0.0 and kappa_over_2pi > 0.0):
        raise InputError("optical frequency and linewidth must be positive")
    return optical_frequency / kappa_over_2pi


def linewidth_from_finesse(fsr: float, finesse: float) -> float:
    """Linewidth kappa / 2 pi in Hz."""
    if not (fsr > 0.0 and finesse > 0.0):
        raise InputError("FSR and finesse must be positive")
    return fsr / finesse


def critical_coupling_rate(kappa: float) -> float:
    """External rate at which the on-resonance reflection vanishes."""
    return kappa / 2.0


def _enhancement(finesse: float, omega: float, kappa: float, kappa_ex: float) -> float:
    if not (finesse > 0.0 and kappa > 0.0) or kappa_ex < 0.0:
        raise InputError("finesse and kappa must be positive, kappa_ex non-negative")
    resonant = (2.0 * finesse / math.pi) ** 2
    return resonant * kappa_ex**2 / (omega**2 + (kappa / 2.0) ** 2)


def sideband_enhancement(cav: OpticalCavity, omega: float) -> float:
    """Sideband power in the cavity relative to a single pass.

    (2F/pi)^2 kappa_ex^2 / (Omega^2 + (kappa/2)^2) for a SAW at Omega (rad/s).
    """
    return _enhancement(cav.finesse, omega, cav.kappa, cav.kappa_ex)


def vpi_reduction(
    v_pi: float, finesse: float, omega: float, kappa: float, kappa_ex: float
) -> float:
    """Half-wave voltage inside the cavity; the power ratio enters as its root."""
    if not v_pi > 0.0:
        raise InputError(f"half-wave voltage must be positive, got {v_pi}")
    enhancement = _enhancement(finesse, omega, kappa, kappa_ex)
    if not enhancement > 0.0:
        raise DegeneratePhysicsError(
            "cavity gives no sideband enhancement (kappa_ex = 0)"
        )
    return v_pi / math.sqrt(enhancement)


def _round_trip_loss(loss_db_per_cm: float, length: float) -> float:
    length_cm = length * 100.0
    return 1.0 - 10.0 ** (-2.0 * loss_db_per_cm * length_cm / 10.0)


def max_finesse_from_loss(loss_db_per_cm: float, length: float) -> float:
    """Loss-limited finesse 2 pi / delta_rt; lossless gives inf."""
    if loss_db_per_cm < 0.0:
        raise InputError(f"propagation loss must be non-negative, got {loss_db_per_cm}")
    if not length > 0.0:
        raise InputError(f"cavity length must be positive, got {length}")
    delta = _round_trip_loss(loss_db_per_cm, length)
    if delta <= 0.0:
        return math.inf
    return 2.0 * math.pi / delta


def finesse_from_reflectivity(
    r1: float, r2: float, loss_db_per_cm: float = 0.0, length: float = 0.0
) -> float:
    """Loss-limited finesse with mirror intensity reflectivities r1, r2 included."""
    if not (0.0 < r1 <= 1.0 and 0.0 < r2 <= 1.0):
        raise InputError("mirror reflectivities must lie in (0, 1]")
    if loss_db_per_cm < 0.0 or length < 0.0:
        raise InputError("propagation loss and length must be non-negative")
    survive = 1.0 - _round_trip_loss(loss_db_per_cm, length)
    delta = 1.0 - r1 * r2 * survive
    if delta <= 0.0:
        return math.inf
    return 2.0 * math.pi / delta


def effective_interaction_length(width: float, finesse: float) -> float:
    """Single-pass length giving the same phase as W inside the cavity."""
    if not (width > 0.0 and finesse > 0.0):
        raise InputError("width and finesse must be positive")
    return width * 2.0 * finesse / math.pi
