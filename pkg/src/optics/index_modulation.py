# optics/index_modulation.py

from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from config.system_config import settings
from handlers.error_handler import InputError
from materials import PhotoelasticConstants
from optics.optical_mode import OpticalMode
from optics.standing_wave import SawStandingField, StrainAndField, strain_and_field_at
from utils.logger import setup_logger

logger = setup_logger(__name__)

WINDOW_RADII = 4.0


def delta_n_y(sf: StrainAndField, c: PhotoelasticConstants) -> NDArray[np.float64]:
    """Index change for y-polarized light from strain and potential gradient."""
    electro_optic = c.r222 * sf.E2 + c.r223 * sf.E3
    photoelastic = c.p2222 * sf.S22 + c.p2233 * sf.S33 + 2.0 * c.p2223 * sf.S23
    return c.n_y**3 / 2.0 * (electro_optic - photoelastic)


class IndexShift(BaseModel):
    """Intensity-weighted index change seen by the optical mode."""

    model_config = ConfigDict(frozen=True)

    delta_n: float = Field(..., description="Effective index change.")
    symmetric: float = Field(
        ..., description="Part from the field components even in z."
    )
    antisymmetric: float = Field(
        ..., description="Part from the field components odd in z."
    )
    order: int = Field(..., description="Gauss-Legendre points per axis.")
    converged: bool = Field(..., description="Stable under doubling the order.")
    relative_change: float = Field(
        ..., description="Relative change when the order is doubled."
    )


def _gauss_nodes(
    center: float, half_width: float, order: int, upper: Optional[float] = None
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    lo = center - half_width
    hi = center + half_width if upper is None else min(upper, center + half_width)
    x, w = leggauss(order)
    return 0.5 * (hi - lo) * x + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


def _intensity(mode: OpticalMode, y, z):
    y_c = -mode.center_depth
    return np.exp(-2.0 * (y - y_c) ** 2 / mode.radius_y**2) * np.exp(
        -2.0 * (z - mode.z_offset) ** 2 / mode.radius_z**2
    )


def _overlap(
    mode: OpticalMode, field: SawStandingField, c: PhotoelasticConstants, order: int
) -> Tuple[float, float]:
    """(symmetric, antisymmetric) parts of the overlap at one quadrature order."""
    y_c = -mode.center_depth
    half_y = WINDOW_RADII * mode.radius_y
    half_z = WINDOW_RADII * mode.radius_z
    if y_c - half_y >= 0.0:
        raise InputError("optical mode window lies entirely above the substrate")

    # the field exists only in the substrate; the mode norm uses the full window
    y, wy = _gauss_nodes(y_c, half_y, order, upper=0.0)
    z, wz = _gauss_nodes(mode.z_offset, half_z, order)
    Y, Z = np.meshgrid(y, z, indexing="ij")
    weights = np.outer(wy, wz) * _intensity(mode, Y, Z)

    forward = delta_n_y(strain_and_field_at(field, Y, Z), c)
    mirrored = delta_n_y(strain_and_field_at(field, Y, -Z), c)
    symmetric = np.sum(weights * 0.5 * (forward + mirrored))
    antisymmetric = np.sum(weights * 0.5 * (forward - mirrored))

    y_n, wy_n = _gauss_nodes(y_c, half_y, order)
    z_n, wz_n = _gauss_nodes(mode.z_offset, half_z, order)
    Y_n, Z_n = np.meshgrid(y_n, z_n, indexing="ij")
    norm = np.sum(np.outer(wy_n, wz_n) * _intensity(mode, Y_n, Z_n))
    return float(symmetric / norm), float(antisymmetric / norm)


def effective_index_shift(
    mode: OpticalMode,
    field: SawStandingField,
    c: PhotoelasticConstants,
    order: Optional[int] = None,
    rtol: Optional[float] = None,
) -> IndexShift:
    """Overlap of the index change with the Gaussian mode intensity.

    Tensor Gauss-Legendre quadrature over +-4 mode radii; the result is checked
    against the same integral at twice the order.
    """
    order = order or settings.QUADRATURE_ORDER
    rtol = settings.QUADRATURE_RTOL if rtol is None else rtol
    symmetric, antisymmetric = _overlap(mode, field, c, order)
    total = symmetric + antisymmetric
    refined = sum(_overlap(mode, field, c, 2 * order))
    scale = max(abs(refined), abs(total))
    change = abs(refined - total) / scale if scale > 0.0 else 0.0
    converged = change <= rtol
    if not converged:
        logger.warning(
            f"Overlap quadrature not converged at order {order}: "
            f"relative change {change:.3e} on doubling"
        )
    return IndexShift(
        delta_n=total,
        symmetric=symmetric,
        antisymmetric=antisymmetric,
        order=order,
        converged=converged,
        relative_change=change,
    )


def modulation_response(
    mode: OpticalMode,
    field: SawStandingField,
    c: PhotoelasticConstants,
    order: Optional[int] = None,
) -> complex:
    """Complex C with delta_n_eff(z0) = Re[C exp(i k z0)] for any mode offset z0."""
    quarter = np.pi / (2.0 * field.k_saw)
    order = order or settings.QUADRATURE_ORDER
    at_zero = sum(_overlap(mode.model_copy(update={"z_offset": 0.0}), field, c, order))
    at_quarter = sum(
        _overlap(mode.model_copy(update={"z_offset": quarter}), field, c, order)
    )
    return complex(at_zero, -at_quarter)


def modulation_antinode(response: complex, k_saw: float) -> float:
    """Mode offset of strongest modulation closest to z = 0."""
    offset = -np.angle(response) / k_saw
    spacing = np.pi / k_saw
    return float((offset + spacing / 2.0) % spacing - spacing / 2.0)


def modulation_nodes(response: complex, k_saw: float) -> NDArray[np.float64]:
    """Offsets of vanishing modulation within one SAW period [-lambda/2, lambda/2)."""
    spacing = np.pi / k_saw
    first = modulation_antinode(response, k_saw) + spacing / 2.0
    nodes = first + spacing * np.arange(-2, 2)
    return np.sort(nodes[(nodes >= -spacing) & (nodes < spacing)])
