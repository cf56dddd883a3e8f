# utils/basetools/saw_velocity_tool.py

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from materials import load_material, reference_material_path
from resonator import resonance_frequency
from saw_solver import Boundary, RayleighSolution, depth_profile, solve_rayleigh

PROFILE_HEADER = ["y_m", "re_uy", "im_uy", "re_uz", "im_uz", "re_phi", "im_phi"]


class SawVelocityInput(BaseModel):
    """Input for the Rayleigh-wave solve."""

    material_file: Optional[str] = Field(
        None, description="Material JSON; the bundled lithium niobate when omitted."
    )
    boundary: Boundary = Field(Boundary.FREE, description="free or metalized surface.")
    wavelength_m: float = Field(40e-6, gt=0, description="SAW wavelength, m.")
    bracket_m_s: Optional[Tuple[float, float]] = Field(
        None, description="Velocity search interval, m/s."
    )
    profile_points: int = Field(
        0, ge=0, description="Depth samples from the surface down to 3 wavelengths."
    )


class SawVelocityOutput(BaseModel):
    """Solved SAW velocity and its resonance at the given wavelength."""

    velocity_m_s: float = Field(..., description="Phase velocity, m/s.")
    boundary: Boundary = Field(..., description="Electrical boundary condition.")
    resonance_hz: float = Field(..., description="velocity / wavelength, Hz.")
    residual: float = Field(..., description="Normalized boundary determinant.")
    profile: List[List[float]] = Field(
        default_factory=list, description="Rows in PROFILE_HEADER order."
    )


def profile_rows(sol: RayleighSolution, points: int, depth: float) -> List[List[float]]:
    """Complex depth profile sampled from y = 0 down to y = -depth."""
    y = np.linspace(0.0, -depth, points)
    u_y, u_z, phi = depth_profile(sol, y)
    columns = np.column_stack(
        [y, u_y.real, u_y.imag, u_z.real, u_z.imag, phi.real, phi.imag]
    )
    return columns.tolist()


def saw_velocity_tool(input: SawVelocityInput) -> SawVelocityOutput:
    """
    Solve for the Rayleigh-type SAW of a material file and report its velocity,
    resonance frequency at the wavelength, and optionally its depth profile.
    """
    material, _ = load_material(input.material_file or reference_material_path())
    sol = solve_rayleigh(
        material,
        boundary=input.boundary,
        wavelength=input.wavelength_m,
        bracket=input.bracket_m_s,
    )
    profile = []
    if input.profile_points:
        profile = profile_rows(sol, input.profile_points, 3.0 * input.wavelength_m)
    return SawVelocityOutput(
        velocity_m_s=sol.velocity,
        boundary=sol.boundary,
        resonance_hz=resonance_frequency(sol.velocity, input.wavelength_m),
        residual=sol.residual,
        profile=profile,
    )
