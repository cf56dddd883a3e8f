# optics/half_wave_voltage.py

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from config.system_config import settings
from handlers.error_handler import DegeneratePhysicsError, InputError
from materials import PhotoelasticConstants
from optics.index_modulation import (
    IndexShift,
    effective_index_shift,
    modulation_antinode,
    modulation_response,
)
from optics.optical_mode import KOptConvention, OpticalMode, k_opt
from optics.standing_wave import standing_field
from resonator import SawResonator, drive_power, saw_amplitude
from saw_solver import RayleighSolution

# |s| below this fraction of the peak response counts as a node
NODE_RATIO = 1e-9


class ModulatorDevice(BaseModel):
    """Everything the half-wave voltage depends on, built from one material set."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    resonator: SawResonator
    solution: RayleighSolution
    mode: OpticalMode
    photoelastic: PhotoelasticConstants
    z0_ohm: float = Field(default_factory=lambda: settings.Z0_OHM, gt=0)
    k_opt_convention: KOptConvention = Field(
        default_factory=lambda: KOptConvention(settings.K_OPT_CONVENTION)
    )
    detuning: float = Field(0.0, description="Drive detuning from resonance, rad/s.")


class VpiResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    v_pi_V: float = Field(..., description="Half-wave voltage, V.")
    length_vpi_V_cm: float = Field(..., description="V_pi times W, V cm.")
    delta_n_per_volt: float = Field(..., description="Effective index change per V.")
    k_opt_convention: KOptConvention
    v_pi_vacuum_V: float = Field(..., description="V_pi with k_opt = 2 pi / lambda.")
    v_pi_material_V: float = Field(..., description="V_pi with k_opt = 2 pi n/lambda.")
    amplitude_per_volt_m: float = Field(..., description="U_0 for a 1 V drive, m.")
    antinode_offset_m: float = Field(
        ..., description="Mode offset of strongest modulation, m."
    )
    index_shift: IndexShift


def v_pi(device: ModulatorDevice, order: Optional[int] = None) -> VpiResult:
    """Half-wave voltage from the index change per volt of drive amplitude.

    The index change is linear in U_0, which is linear in the drive voltage, so
    V_pi = pi / (k_opt W s) with s the effective index change at 1 V.
    """
    r = device.resonator
    amplitude = saw_amplitude(drive_power(1.0, device.z0_ohm), device.detuning, r)
    field = standing_field(device.solution, amplitude)
    shift = effective_index_shift(device.mode, field, device.photoelastic, order)
    response = modulation_response(device.mode, field, device.photoelastic, order)

    s = shift.delta_n
    if not abs(s) > NODE_RATIO * abs(response):
        raise DegeneratePhysicsError(
            f"no modulation sensitivity at z_offset = {device.mode.z_offset:.9e} m"
        )

    def half_wave(convention: KOptConvention) -> float:
        k = k_opt(device.mode, convention, device.photoelastic.n_y)
        return math.pi / (k * r.width_w * abs(s))

    value = half_wave(device.k_opt_convention)
    return VpiResult(
        v_pi_V=value,
        length_vpi_V_cm=length_vpi_product(value, r.width_w),
        delta_n_per_volt=s,
        k_opt_convention=device.k_opt_convention,
        v_pi_vacuum_V=half_wave(KOptConvention.VACUUM),
        v_pi_material_V=half_wave(KOptConvention.MATERIAL),
        amplitude_per_volt_m=amplitude,
        antinode_offset_m=modulation_antinode(response, field.k_saw),
        index_shift=shift,
    )


def length_vpi_product(v_pi: float, width: float) -> float:
    """V_pi times interaction length, in V cm."""
    if not (v_pi > 0.0 and width > 0.0):
        raise InputError("half-wave voltage and length must be positive")
    return v_pi * width * 100.0


def scale_vpi_with_aperture(v_pi_ref: float, w_ref: float, w_new: float) -> float:
    """V_pi at a new aperture, using V_pi proportional to W^(-1/2) at fixed drive."""
    if not (v_pi_ref > 0.0 and w_ref > 0.0 and w_new > 0.0):
        raise InputError("half-wave voltage and apertures must be positive")
    return v_pi_ref * math.sqrt(w_ref / w_new)
