# optics/optical_mode.py

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from handlers.error_handler import InputError


class KOptConvention(str, Enum):
    VACUUM = "vacuum"
    MATERIAL = "material"


class OpticalMode(BaseModel):
    """Gaussian guided mode; positions are measured from the surface u_z antinode."""

    model_config = ConfigDict(frozen=True)

    diameter_y: float = Field(6.7e-6, gt=0, description="1/e^2 diameter along y, m.")
    diameter_z: float = Field(9.7e-6, gt=0, description="1/e^2 diameter along z, m.")
    center_depth: float = Field(
        4e-6, ge=0, description="Depth of the mode center below the surface, m."
    )
    z_offset: float = Field(0.0, description="Mode center along z, m.")
    wavelength: float = Field(1064e-9, gt=0, description="Vacuum wavelength, m.")
    n_y: Optional[float] = Field(
        None, gt=1, description="Mode index; defaults to the material n_y."
    )

    @property
    def radius_y(self) -> float:
        return self.diameter_y / 2.0

    @property
    def radius_z(self) -> float:
        return self.diameter_z / 2.0


def k_opt(
    mode: OpticalMode,
    convention: KOptConvention | str = KOptConvention.VACUUM,
    n_y: Optional[float] = None,
) -> float:
    """Optical wavenumber used in the half-wave condition."""
    convention = KOptConvention(convention)
    vacuum = 2.0 * math.pi / mode.wavelength
    if convention is KOptConvention.VACUUM:
        return vacuum
    index = mode.n_y if mode.n_y is not None else n_y
    if index is None:
        raise InputError("the material k_opt convention needs a refractive index")
    return vacuum * index
