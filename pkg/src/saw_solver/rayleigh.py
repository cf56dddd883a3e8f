# saw_solver/rayleigh.py

from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import minimize_scalar

from config.system_config import settings
from handlers.error_handler import (
    ConvergenceError,
    DegeneratePhysicsError,
    InputError,
    NotSubsonicError,
)
from materials import MaterialSet
from saw_solver.partial_waves import (
    DEFAULT_DIRECTION,
    DEFAULT_NORMAL,
    PartialWaveRoot,
    bulk_velocities,
    check_axes,
    decaying_roots,
    partial_wave_roots,
    scaled_tensors,
)
from utils.logger import setup_logger

logger = setup_logger(__name__)

Depth = Union[float, ArrayLike]


class Boundary(str, Enum):
    FREE = "free"
    METALIZED = "metalized"


class RayleighSolution(BaseModel):
    """A solved Rayleigh-type surface wave, normalized to unit surface amplitude."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    velocity: float = Field(..., gt=0, description="Phase velocity, m/s.")
    wavelength: float = Field(..., gt=0, description="SAW wavelength, m.")
    roots: List[PartialWaveRoot] = Field(..., description="The 4 decaying waves.")
    weights: np.ndarray = Field(..., description="Complex weight of each root.")
    boundary: Boundary
    material: MaterialSet
    direction: np.ndarray = Field(..., description="Propagation unit vector.")
    normal: np.ndarray = Field(..., description="Outward surface normal.")
    residual: float = Field(..., description="Normalized |D| at `velocity`.")
    potential_scale: float = Field(
        ..., description="Volts of potential per metre of scaled potential."
    )

    @property
    def wavenumber(self) -> float:
        return 2.0 * np.pi / self.wavelength

    def surface_displacement(self) -> NDArray[np.complex128]:
        """Complex (u_1, u_2, u_3) at the surface; unit norm."""
        return sum(
            (w * root.polarization[:3] for w, root in zip(self.weights, self.roots)),
            np.zeros(3, dtype=complex),
        )


def boundary_matrix(
    roots: Sequence[PartialWaveRoot], boundary: Boundary, material: MaterialSet
) -> NDArray[np.complex128]:
    """4x4 boundary matrix with rows scaled to unit norm.

    Rows are the three traction components and one electrical condition:
    continuity of D_n with the decaying vacuum potential (free) or phi = 0
    (metalized). Columns follow the order of `roots`.
    """
    if len(roots) != 4 or not all(root.decaying for root in roots):
        raise InputError("the boundary matrix needs exactly the 4 decaying roots")
    vacuum = scaled_tensors(material).vacuum_ratio
    columns = []
    for root in roots:
        if Boundary(boundary) is Boundary.FREE:
            electrical = root.traction[3] + 1j * vacuum * root.polarization[3]
        else:
            electrical = root.polarization[3]
        columns.append([*root.traction[:3], electrical])
    matrix = np.array(columns, dtype=complex).T
    norms = np.linalg.norm(matrix, axis=1)
    if np.any(norms == 0.0):
        raise DegeneratePhysicsError(
            f"boundary row {int(np.argmin(norms))} vanishes for every partial wave"
        )
    return matrix / norms[:, None]


def boundary_determinant(
    v: float,
    roots: Sequence[PartialWaveRoot],
    boundary: Boundary,
    material: MaterialSet,
) -> complex:
    """Determinant of the row-normalized boundary matrix at trial velocity `v`."""
    try:
        return complex(np.linalg.det(boundary_matrix(roots, boundary, material)))
    except InputError as e:
        raise InputError(f"at v = {v:.6f} m/s: {e}") from e


def default_bracket(
    m: MaterialSet, direction: ArrayLike = DEFAULT_DIRECTION
) -> Tuple[float, float]:
    """Search interval below the slowest stiffened bulk wave."""
    slowest = float(bulk_velocities(m, direction)[0])
    return 0.7 * slowest, slowest * (1.0 - 1e-6)


def _residual(
    v: float,
    m: MaterialSet,
    boundary: Boundary,
    direction: ArrayLike,
    normal: ArrayLike,
) -> float:
    try:
        roots = decaying_roots(partial_wave_roots(v, m, direction, normal, warn=False))
    except NotSubsonicError:
        return np.nan
    return abs(boundary_determinant(v, roots, boundary, m))


def solve_rayleigh(
    m: MaterialSet,
    boundary: Union[Boundary, str] = Boundary.FREE,
    wavelength: float = 40e-6,
    bracket: Optional[Tuple[float, float]] = None,
    direction: ArrayLike = DEFAULT_DIRECTION,
    normal: ArrayLike = DEFAULT_NORMAL,
    grid_points: Optional[int] = None,
    rtol: Optional[float] = None,
) -> RayleighSolution:
    """Locate the Rayleigh velocity by a grid scan of |D| and golden refinement."""
    boundary = Boundary(boundary)
    direction, normal = check_axes(direction, normal)
    if not wavelength > 0.0:
        raise InputError(f"wavelength must be positive, got {wavelength}")
    lo, hi = bracket if bracket is not None else default_bracket(m, direction)
    if not 0.0 < lo < hi:
        raise InputError(f"invalid velocity bracket [{lo}, {hi}]")
    points = grid_points or settings.GRID_POINTS
    rtol = rtol or settings.VELOCITY_RTOL

    def residual(v: float) -> float:
        value = _residual(v, m, boundary, direction, normal)
        return np.inf if np.isnan(value) else value

    logger.debug(f"Scanning |D| ({boundary.value}) on {points} points in [{lo}, {hi}]")
    grid = np.linspace(lo, hi, points)
    values = np.array([_residual(v, m, boundary, direction, normal) for v in grid])
    if np.all(np.isnan(values)):
        raise ConvergenceError(
            f"no subsonic trial velocity in bracket [{lo:.6g}, {hi:.6g}] m/s"
        )
    if np.any(np.isnan(values)):
        logger.debug(f"Skipped {int(np.sum(np.isnan(values)))} non-subsonic points")

    # nanargmin keeps the first minimum, i.e. the lowest velocity on ties
    best = int(np.nanargmin(values))
    velocity = float(grid[best])
    if 0 < best < points - 1 and np.all(np.isfinite(values[best - 1 : best + 2])):
        try:
            result = minimize_scalar(
                residual,
                bracket=(grid[best - 1], grid[best], grid[best + 1]),
                method="golden",
                tol=rtol,
            )
            velocity = float(result.x)
        except ValueError:
            logger.warning(f"Grid minimum at {velocity:.6f} m/s is not bracketed")

    final = residual(velocity)
    if not final < settings.RESIDUAL_THRESHOLD:
        raise ConvergenceError(
            f"no Rayleigh root in [{lo:.6g}, {hi:.6g}] m/s "
            f"(smallest normalized |D| = {final:.3e} at {velocity:.6f} m/s)"
        )

    roots = decaying_roots(partial_wave_roots(velocity, m, direction, normal))
    weights = _null_vector(boundary_matrix(roots, boundary, m))
    weights = _normalize_weights(weights, roots, direction)
    weights.setflags(write=False)
    logger.debug(f"Rayleigh velocity {velocity:.6f} m/s, |D| = {final:.3e}")
    return RayleighSolution(
        velocity=velocity,
        wavelength=wavelength,
        roots=roots,
        weights=weights,
        boundary=boundary,
        material=m,
        direction=direction,
        normal=normal,
        residual=final,
        potential_scale=scaled_tensors(m).potential_scale,
    )


def _null_vector(matrix: NDArray[np.complex128]) -> NDArray[np.complex128]:
    _, _, vh = np.linalg.svd(matrix)
    return vh[-1].conj()


def _normalize_weights(
    weights: NDArray[np.complex128],
    roots: Sequence[PartialWaveRoot],
    direction: NDArray[np.float64],
) -> NDArray[np.complex128]:
    """Unit surface displacement with a real positive longitudinal component."""
    surface = sum(w * root.polarization[:3] for w, root in zip(weights, roots))
    norm = np.linalg.norm(surface)
    if norm == 0.0:
        raise DegeneratePhysicsError("solved surface wave has no displacement")
    longitudinal = direction @ surface
    reference = longitudinal
    if abs(longitudinal) < 1e-8 * norm:
        reference = surface[int(np.argmax(np.abs(surface)))]
    phase = np.conj(reference) / abs(reference)
    return np.asarray(weights * phase / norm, dtype=complex)


def _mode_sum(sol: RayleighSolution, y: Depth, order: int) -> NDArray[np.complex128]:
    depth = np.asarray(y, dtype=float)
    if np.any(depth > 0.0):
        raise InputError("depth profile is defined for y <= 0 (substrate side) only")
    k = sol.wavenumber
    alphas = np.array([root.alpha for root in sol.roots])
    polarizations = np.array([root.polarization for root in sol.roots])
    # rows: normal displacement, longitudinal displacement, potential in volts
    projection = np.zeros((3, 4))
    projection[0, :3] = sol.normal
    projection[1, :3] = sol.direction
    projection[2, 3] = sol.potential_scale
    amplitudes = (polarizations @ projection.T) * sol.weights[:, None]
    phase = np.exp(1j * k * np.multiply.outer(depth, alphas))
    waves = phase * (1j * k * alphas) ** order
    return np.einsum("...r,rc->c...", waves, amplitudes)


def depth_profile(
    sol: RayleighSolution, y: Depth
) -> Tuple[NDArray[np.complex128], NDArray[np.complex128], NDArray[np.complex128]]:
    """(u_y, u_z, phi) at depth y per unit surface amplitude; phi in V per metre."""
    u_y, u_z, phi = _mode_sum(sol, y, 0)
    return u_y, u_z, phi


def depth_gradient(
    sol: RayleighSolution, y: Depth
) -> Tuple[NDArray[np.complex128], NDArray[np.complex128], NDArray[np.complex128]]:
    """d/dy of (u_y, u_z, phi), evaluated analytically from the partial waves."""
    du_y, du_z, dphi = _mode_sum(sol, y, 1)
    return du_y, du_z, dphi


def electromechanical_coupling(
    free_velocity: float, metalized_velocity: float
) -> float:
    """K^2 = 2 (v_free - v_metalized) / v_free."""
    if not free_velocity > 0.0:
        raise InputError("free-surface velocity must be positive")
    return 2.0 * (free_velocity - metalized_velocity) / free_velocity
