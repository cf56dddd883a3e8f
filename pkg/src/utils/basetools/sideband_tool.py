# utils/basetools/sideband_tool.py

from typing import Optional

from pydantic import BaseModel, Field

from analysis import (
    ModulationDrive,
    vpi_from_sideband_ratio,
    vpi_from_sideband_ratio_exact,
)
from handlers.error_handler import InputError


class SidebandInput(BaseModel):
    """Input for extracting V_pi from a heterodyne sideband comparison."""

    delta_db: float = Field(
        ..., description="Reference minus device sideband power, dB."
    )
    vpi_ref_V: float = Field(..., gt=0, description="Reference modulator V_pi, V.")
    beta_exact: bool = Field(False, description="Invert the full J_1 response.")
    drive_V: Optional[float] = Field(
        None, gt=0, description="Common drive amplitude, V; needed for beta_exact."
    )
    drive_frequency_hz: float = Field(87.6e6, gt=0, description="Drive frequency, Hz.")


class SidebandOutput(BaseModel):
    v_pi_V: float = Field(..., description="Half-wave voltage of the device, V.")


def sideband_tool(input: SidebandInput) -> SidebandOutput:
    """
    Convert a measured sideband power difference into the device V_pi.
    """
    if not input.beta_exact:
        return SidebandOutput(
            v_pi_V=vpi_from_sideband_ratio(input.delta_db, input.vpi_ref_V)
        )
    if input.drive_V is None:
        raise InputError("--beta-exact needs the drive amplitude --drive-v")
    drive = ModulationDrive(
        voltage=input.drive_V,
        frequency=input.drive_frequency_hz,
        v_pi_ref=input.vpi_ref_V,
    )
    return SidebandOutput(v_pi_V=vpi_from_sideband_ratio_exact(input.delta_db, drive))
