# analysis/sidebands.py
"""Phase-modulation sidebands and the heterodyne V_pi comparison.

A phase modulator driven at depth beta splits the carrier into lines of
amplitude J_n(beta). Comparing first-sideband powers of two modulators at the
same drive gives the ratio of their half-wave voltages.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from handlers.error_handler import InputError
from resonator import SawResonator, drive_power, phonon_number

# J_1 rises monotonically up to its first maximum at this argument
J1_FIRST_MAXIMUM = 1.8411837813406593
RESCALE_ABOVE = 1e200


class ModulationDrive(BaseModel):
    model_config = ConfigDict(frozen=True)

    voltage: float = Field(..., ge=0, description="Drive amplitude, V.")
    frequency: float = Field(..., gt=0, description="Drive frequency, Hz.")
    v_pi_ref: float = Field(..., gt=0, description="Reference modulator V_pi, V.")

    @property
    def reference_depth(self) -> float:
        return modulation_depth(self.voltage, self.v_pi_ref)


def modulation_depth(voltage: float, v_pi: float) -> float:
    """beta = pi V / V_pi."""
    if not v_pi > 0.0:
        raise InputError(f"half-wave voltage must be positive, got {v_pi}")
    return math.pi * voltage / v_pi


def _miller_start(n_max: int, beta: float) -> int:
    start = n_max + int(beta) + 30 + int(math.sqrt(40.0 * (n_max + beta + 1.0)))
    return start + start % 2


def bessel_j_sequence(beta: float, n_max: int) -> NDArray[np.float64]:
    """J_0(beta) ... J_n_max(beta) by downward recurrence.

    The recurrence is normalized with J_0^2 + 2 sum J_n^2 = 1 and its sign
    fixed with J_0 + 2 sum J_2k = 1.
    """
    if n_max < 0:
        raise InputError(f"n_max must be non-negative, got {n_max}")
    if not math.isfinite(beta):
        raise InputError(f"modulation depth must be finite, got {beta}")
    values = np.zeros(n_max + 1)
    if beta == 0.0:
        values[0] = 1.0
        return values

    x = abs(beta)
    start = _miller_start(n_max, x)
    j = np.zeros(start + 2)
    j[start] = 1e-30
    for k in range(start, 0, -1):
        j[k - 1] = 2.0 * k / x * j[k] - j[k + 1]
        if abs(j[k - 1]) > RESCALE_ABOVE:
            j[k - 1 :] /= RESCALE_ABOVE

    norm = math.sqrt(j[0] ** 2 + 2.0 * np.sum(j[1:] ** 2))
    sign = math.copysign(1.0, j[0] + 2.0 * np.sum(j[2::2]))
    values[:] = sign * j[: n_max + 1] / norm
    if beta < 0.0:
        # J_n(-x) = (-1)^n J_n(x)
        values[1::2] *= -1.0
    return values


def sideband_power_relative(beta: float, order: int) -> float:
    """Power in sideband `order` relative to the carrier, J_n^2 / J_0^2."""
    if order < 0:
        raise InputError(f"sideband order must be non-negative, got {order}")
    j = bessel_j_sequence(beta, order)
    if j[0] == 0.0:
        raise InputError(f"carrier vanishes at beta = {beta}")
    return float(j[order] ** 2 / j[0] ** 2)


def total_sideband_power(beta: float, n_max: int) -> float:
    """Fraction of power in all sidebands of order 1..n_max on both sides."""
    j = bessel_j_sequence(beta, n_max)
    return float(2.0 * np.sum(j[1:] ** 2))


def sideband_ratio_db(beta_ref: float, beta_dut: float) -> float:
    """First-sideband power of the reference over the device under test, dB."""
    reference = sideband_power_relative(beta_ref, 1)
    device = sideband_power_relative(beta_dut, 1)
    if not (reference > 0.0 and device > 0.0):
        raise InputError("both modulation depths must be non-zero")
    return 10.0 * math.log10(reference / device)


def vpi_from_sideband_ratio(delta_db: float, v_pi_ref: float) -> float:
    """Small-signal V_pi; positive delta_db means the device is weaker."""
    if not v_pi_ref > 0.0:
        raise InputError(
            f"reference half-wave voltage must be positive, got {v_pi_ref}"
        )
    return v_pi_ref * 10.0 ** (delta_db / 20.0)


def _first_sideband(beta: float) -> float:
    return float(bessel_j_sequence(beta, 1)[1] ** 2)


def vpi_from_sideband_ratio_exact(delta_db: float, drive: ModulationDrive) -> float:
    """V_pi from the measured dB difference using the full J_1 response.

    Compares absolute first-sideband powers J_1(beta)^2 and inverts on the
    rising branch of J_1.
    """
    beta_ref = drive.reference_depth
    if not 0.0 < beta_ref < J1_FIRST_MAXIMUM:
        raise InputError(
            f"reference depth {beta_ref:.6g} rad is outside the invertible range "
            f"(0, {J1_FIRST_MAXIMUM:.6g})"
        )
    target = _first_sideband(beta_ref) * 10.0 ** (-delta_db / 10.0)
    if not 0.0 < target < _first_sideband(J1_FIRST_MAXIMUM):
        raise InputError(
            f"a {delta_db} dB difference is outside the range J_1 can reach"
        )
    # J_1(b) <= b / 2, so the lower end always undershoots the target
    lower = math.sqrt(target)
    beta_dut = brentq(
        lambda b: _first_sideband(b) - target, lower, J1_FIRST_MAXIMUM, xtol=1e-15
    )
    return math.pi * drive.voltage / beta_dut


def beat_frequency(omega_aom: float, omega_rf: float) -> float:
    """Heterodyne beat of the first lower sideband with the shifted LO."""
    return omega_aom - omega_rf



class SidebandSpectrum(BaseModel):
    """First-sideband power against drive frequency for the device and reference."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frequencies: np.ndarray = Field(..., description="Drive frequencies, Hz.")
    device_db: np.ndarray = Field(..., description="Device J_1^2, dB.")
    reference_db: np.ndarray = Field(..., description="Reference J_1^2, dB.")

    @property
    def difference_db(self) -> NDArray[np.float64]:
        """Reference minus device, the quantity `vpi_from_sideband_ratio` takes."""
        return self.reference_db - self.device_db


def sideband_spectrum(
    drive: ModulationDrive,
    resonator: SawResonator,
    frequencies: ArrayLike,
    v_pi: float,
) -> SidebandSpectrum:
    """Sideband response of a SAW device with on-resonance V_pi `v_pi`.

    The device depth follows the phonon number, so its sideband power traces
    the resonator Lorentzian; the reference modulator is flat in frequency.
    """
    if not drive.voltage > 0.0:
        raise InputError("a sideband spectrum needs a non-zero drive voltage")
    f = np.asarray(frequencies, dtype=float)
    if f.ndim != 1 or f.size == 0 or not np.all(np.isfinite(f)):
        raise InputError("drive frequencies must be a finite, non-empty 1-D array")
    power = drive_power(drive.voltage)
    peak = phonon_number(power, 0.0, resonator)
    beta_peak = modulation_depth(drive.voltage, v_pi)

    device = np.empty(f.size)
    for i, frequency in enumerate(f):
        detuning = 2.0 * math.pi * frequency - resonator.omega
        beta = beta_peak * math.sqrt(phonon_number(power, detuning, resonator) / peak)
        device[i] = 10.0 * math.log10(_first_sideband(beta))
    flat = 10.0 * math.log10(_first_sideband(drive.reference_depth))
    reference = np.full(f.size, flat)
    return SidebandSpectrum(frequencies=f, device_db=device, reference_db=reference)
