# optics/standing_wave.py
"""Standing SAW between the resonator mirrors.

The forward wave is Re[U(y) e^{i(kz - wt)}] and the backward wave is its time
reverse, so their sum oscillates in phase everywhere with the spatial profile
Re[U(y) e^{ikz}]. The solved profile has real positive u_z at the surface, which
puts the surface u_z antinode at z = 0.
"""

from typing import Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field

from handlers.error_handler import InputError
from saw_solver import RayleighSolution, depth_gradient, depth_profile

Coordinate = Union[float, ArrayLike]


class SawStandingField(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    solution: RayleighSolution
    amplitude_u0: float = Field(..., ge=0, description="Peak surface displacement, m.")
    k_saw: float = Field(..., gt=0, description="SAW wavenumber, rad/m.")
    semi_axis: float = Field(
        ..., gt=0, description="Peak surface displacement of the unit solution."
    )

    @property
    def scale(self) -> float:
        return self.amplitude_u0 / self.semi_axis


class StrainAndField(BaseModel):
    """Tensor strain components and E_k = d(phi)/dx_k, in V/m."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    S22: np.ndarray
    S33: np.ndarray
    S23: np.ndarray
    E2: np.ndarray
    E3: np.ndarray


def _semi_major_axis(vector: NDArray[np.complex128]) -> float:
    """Largest |Re[a e^{i t}]| over t for a complex vector a."""
    norm_sq = float(np.vdot(vector, vector).real)
    return float(np.sqrt((norm_sq + abs(np.sum(vector**2))) / 2.0))


def standing_field(sol: RayleighSolution, u0: float) -> SawStandingField:
    """Standing wave of two counter-propagating copies of `sol`, peak amplitude u0."""
    if u0 < 0.0:
        raise InputError(f"SAW amplitude must be non-negative, got {u0}")
    return SawStandingField(
        solution=sol,
        amplitude_u0=u0,
        k_saw=sol.wavenumber,
        semi_axis=_semi_major_axis(sol.surface_displacement()),
    )


def _phase(f: SawStandingField, z: Coordinate) -> NDArray[np.complex128]:
    return np.exp(1j * f.k_saw * np.asarray(z, dtype=float))


def displacement_at(
    f: SawStandingField, y: Coordinate, z: Coordinate
) -> Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Real (u_y, u_z, phi) of the standing wave; phi in volts."""
    u_y, u_z, phi = depth_profile(f.solution, y)
    phase = _phase(f, z) * f.scale
    return (u_y * phase).real, (u_z * phase).real, (phi * phase).real


def strain_and_field_at(
    f: SawStandingField, y: Coordinate, z: Coordinate
) -> StrainAndField:
    """Analytic strains and potential gradient at (y, z); y and z broadcast."""
    if np.any(np.asarray(y) > 0.0):
        raise InputError("strain and field are defined for y <= 0 only")
    u_y, u_z, phi = depth_profile(f.solution, y)
    du_y, du_z, dphi = depth_gradient(f.solution, y)
    ik = 1j * f.k_saw
    phase = _phase(f, z) * f.scale
    return StrainAndField(
        S22=np.asarray((du_y * phase).real),
        S33=np.asarray((ik * u_z * phase).real),
        S23=np.asarray((0.5 * (ik * u_y + du_z) * phase).real),
        E2=np.asarray((dphi * phase).real),
        E3=np.asarray((ik * phi * phase).real),
    )
