# utils/basetools/vpi_tool.py

from typing import Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

from optics import (
    ModulatorDevice,
    SweepPoint,
    build_device,
    iter_sweep_vpi,
    load_device_config,
    sweep_values,
    v_pi,
    with_parameter,
)
from optics.device import SweepParameter
from utils.output import write_csv


class VpiInput(BaseModel):
    """Input for a single half-wave voltage evaluation."""

    device_file: str = Field(..., description="Device JSON document.")
    z_offset_m: Optional[float] = Field(
        None, description="Override of the mode offset along z, m."
    )


class VpiOutput(BaseModel):
    """Half-wave voltage of the device at one operating point."""

    v_pi_V: float = Field(..., description="Half-wave voltage, V.")
    length_vpi_V_cm: float = Field(..., description="V_pi times W, V cm.")
    delta_n_per_volt: float = Field(..., description="Effective index change per V.")
    velocity_m_s: float = Field(..., description="Solved SAW velocity, m/s.")
    amplitude_per_volt_m: float = Field(..., description="U_0 at 1 V drive, m.")
    antinode_offset_m: float = Field(
        ..., description="Mode offset of strongest modulation, m."
    )
    quadrature_converged: bool = Field(
        ..., description="Overlap stable under doubling the quadrature order."
    )


class VpiSweepInput(BaseModel):
    """Input for a half-wave voltage sweep over one device parameter."""

    device_file: str = Field(..., description="Device JSON document.")
    parameter: SweepParameter = Field(..., description="Swept parameter name.")
    start: float = Field(..., description="First value.")
    stop: float = Field(..., description="Last value.")
    steps: int = Field(..., ge=1, description="Number of values, inclusive.")
    z_offset_m: Optional[float] = Field(
        None, description="Mode offset used when another parameter is swept, m."
    )
    workers: Optional[int] = Field(None, ge=1, description="Concurrent points.")
    out_file: Optional[str] = Field(
        None, description="CSV written row by row as points finish."
    )


class VpiSweepOutput(BaseModel):
    parameter: SweepParameter = Field(..., description="Swept parameter name.")
    points: List[SweepPoint] = Field(..., description="Results in input order.")


def load_modulator(device_file: str, z_offset_m: Optional[float]) -> ModulatorDevice:
    device = build_device(load_device_config(device_file))
    if z_offset_m is not None:
        device = with_parameter(device, "z_offset_m", z_offset_m)
    return device


def sweep_header(parameter: str) -> List[str]:
    return [parameter, "v_pi_V"]


def vpi_tool(input: VpiInput) -> VpiOutput:
    """
    Build the device from its document and compute V_pi with the
    intensity-weighted index change of the standing SAW.
    """
    device = load_modulator(input.device_file, input.z_offset_m)
    result = v_pi(device)
    return VpiOutput(
        v_pi_V=result.v_pi_V,
        length_vpi_V_cm=result.length_vpi_V_cm,
        delta_n_per_volt=result.delta_n_per_volt,
        velocity_m_s=device.solution.velocity,
        amplitude_per_volt_m=result.amplitude_per_volt_m,
        antinode_offset_m=result.antinode_offset_m,
        quadrature_converged=result.index_shift.converged,
    )


def iter_vpi_sweep(input: VpiSweepInput) -> Iterator[SweepPoint]:
    """
    Build the device, then yield sweep points in input order as they finish.
    """
    device = load_modulator(input.device_file, input.z_offset_m)
    values = sweep_values(input.start, input.stop, input.steps)
    return iter_sweep_vpi(device, input.parameter, values, workers=input.workers)


def vpi_sweep_tool(input: VpiSweepInput) -> VpiSweepOutput:
    """
    Sweep V_pi over evenly spaced values of one parameter; nodes report inf.
    With `out_file` set, each row is on disk as soon as its point is emitted.
    """
    sweep = iter_vpi_sweep(input)
    if input.out_file is None:
        return VpiSweepOutput(parameter=input.parameter, points=list(sweep))

    points: List[SweepPoint] = []

    def rows() -> Iterator[Tuple[float, float]]:
        for point in sweep:
            points.append(point)
            yield point.value, point.v_pi_V

    write_csv(input.out_file, sweep_header(input.parameter), rows())
    return VpiSweepOutput(parameter=input.parameter, points=points)
