# saw_solver/partial_waves.py
"""Partial waves of a piezoelectric half-space in the quasi-static limit.

Fields of one partial wave vary as exp(i k (m.x + alpha n.x) - i w t), with m the
propagation direction and n the outward surface normal, so the substrate
occupies n.x <= 0 and a wave decays into it when Im(alpha) < 0.

The generalized displacement is (u_1, u_2, u_3, phi) and the matching traction
(t_1, t_2, t_3, D_n). Both are kept in scaled units: stiffness divided by
c0 = max|c_IJ|, permittivity by eps_s = max eps_ii and piezoelectric constants
by sqrt(c0 eps_s), which makes phi carry units of length.
"""

from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from scipy.constants import epsilon_0
from scipy.linalg import qr

from handlers.error_handler import InputError, NotSubsonicError
from materials import MaterialSet, voigt_to_full
from utils.logger import setup_logger

logger = setup_logger(__name__)

DECAY_TOL = 1e-9
CLUSTER_TOL = 1e-6
PERTURBATION = 1e-9
DEFAULT_DIRECTION = (0.0, 0.0, 1.0)
DEFAULT_NORMAL = (0.0, 1.0, 0.0)


class PartialWaveRoot(BaseModel):
    """One eigen-solution of the coupled secular problem."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: complex = Field(..., description="Depth exponent; decays when Im < 0.")
    polarization: np.ndarray = Field(
        ..., description="Unit-normalized (u_1, u_2, u_3, phi_scaled), crystal frame."
    )
    traction: np.ndarray = Field(
        ..., description="Scaled (t_1, t_2, t_3, D_n) per i k, same normalization."
    )

    @property
    def decaying(self) -> bool:
        return self.alpha.imag < -DECAY_TOL


class ScaledTensors(NamedTuple):
    """Generalized elasto-piezo-dielectric tensor E_iJKl in scaled units."""

    tensor: NDArray[np.float64]
    stiffness_scale: float
    permittivity_scale: float

    @property
    def potential_scale(self) -> float:
        """Volts of physical potential per metre of scaled potential."""
        return float(np.sqrt(self.stiffness_scale / self.permittivity_scale))

    @property
    def vacuum_ratio(self) -> float:
        return epsilon_0 / self.permittivity_scale


def scaled_tensors(m: MaterialSet) -> ScaledTensors:
    c0 = float(np.max(np.abs(m.stiffness)))
    eps_s = float(np.max(np.diag(m.permittivity)))
    c = voigt_to_full(m.stiffness) / c0
    e = voigt_to_full(m.piezo) / np.sqrt(c0 * eps_s)
    eps = np.asarray(m.permittivity) / eps_s

    tensor = np.zeros((3, 4, 4, 3))
    tensor[:, :3, :3, :] = c
    # E_ij4l = e_lij and E_i4kl = e_ikl
    tensor[:, :3, 3, :] = np.einsum("lij->ijl", e)
    tensor[:, 3, :3, :] = e
    tensor[:, 3, 3, :] = -eps
    return ScaledTensors(tensor, c0, eps_s)


def check_axes(
    direction: ArrayLike, normal: ArrayLike
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    m = np.asarray(direction, dtype=float)
    n = np.asarray(normal, dtype=float)
    if m.shape != (3,) or n.shape != (3,):
        raise InputError("direction and normal must be 3-vectors")
    if abs(np.linalg.norm(m) - 1.0) > 1e-10 or abs(np.linalg.norm(n) - 1.0) > 1e-10:
        raise InputError("direction and normal must be unit vectors")
    if abs(m @ n) > 1e-10:
        raise InputError("direction must be perpendicular to the surface normal")
    return m, n


def stroh_matrix(
    v: float, m: MaterialSet, direction: ArrayLike, normal: ArrayLike
) -> Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """8x8 eigen-matrix N with N (A, L) = alpha (A, L), plus R and T."""
    m_vec, n_vec = check_axes(direction, normal)
    scaled = scaled_tensors(m)
    E = scaled.tensor
    Q = np.einsum("i,iJKl,l->JK", m_vec, E, m_vec)
    R = np.einsum("i,iJKl,l->JK", m_vec, E, n_vec)
    T = np.einsum("i,iJKl,l->JK", n_vec, E, n_vec)
    Q[:3, :3] -= m.density * v**2 / scaled.stiffness_scale * np.eye(3)

    T_inv = np.linalg.inv(T)
    N = np.block(
        [
            [-T_inv @ R.T, T_inv],
            [R @ T_inv @ R.T - Q, -R @ T_inv],
        ]
    )
    return N, R, T


def _clusters(alphas: NDArray[np.complex128]) -> List[List[int]]:
    groups: List[List[int]] = []
    for index, alpha in enumerate(alphas):
        for group in groups:
            if abs(alphas[group[0]] - alpha) < CLUSTER_TOL:
                group.append(index)
                break
        else:
            groups.append([index])
    return [group for group in groups if len(group) > 1]


def _cluster_basis(
    N: NDArray[np.float64], alpha: complex, multiplicity: int
) -> Optional[NDArray[np.complex128]]:
    """Canonical eigenspace basis for a repeated root, None if defective."""
    shifted = N - alpha * np.eye(N.shape[0])
    _, singular, vh = np.linalg.svd(shifted)
    if singular[-multiplicity] > CLUSTER_TOL * singular[0]:
        return None
    null = vh[-multiplicity:].conj().T
    # reduce to the identity on pivot rows so the basis does not depend on the SVD
    _, _, pivots = qr(null.T, pivoting=True)
    basis = null @ np.linalg.inv(null[pivots[:multiplicity]])
    return basis


def _eigensystem(
    N: NDArray[np.float64],
) -> Tuple[NDArray[np.complex128], NDArray[np.complex128], bool, bool]:
    alphas, vectors = np.linalg.eig(N)
    alphas = alphas.astype(complex)
    vectors = vectors.astype(complex)
    degenerate = False
    for group in _clusters(alphas):
        degenerate = True
        mean = complex(np.mean(alphas[group]))
        basis = _cluster_basis(N, mean, len(group))
        if basis is None:
            return alphas, vectors, True, False
        alphas[group] = mean
        vectors[:, group] = basis
    return alphas, vectors, degenerate, True


def _sorted_roots(
    alphas: NDArray[np.complex128], vectors: NDArray[np.complex128]
) -> List[PartialWaveRoot]:
    order = np.lexsort((alphas.real, alphas.imag))
    roots = []
    for index in order:
        vector = vectors[:, index] / np.linalg.norm(vectors[:, index])
        polarization = vector[:4].copy()
        traction = vector[4:].copy()
        polarization.setflags(write=False)
        traction.setflags(write=False)
        roots.append(
            PartialWaveRoot(
                alpha=complex(alphas[index]),
                polarization=polarization,
                traction=traction,
            )
        )
    return roots


def partial_wave_roots(
    v: float,
    m: MaterialSet,
    direction: ArrayLike = DEFAULT_DIRECTION,
    normal: ArrayLike = DEFAULT_NORMAL,
    warn: bool = True,
) -> List[PartialWaveRoot]:
    """All 8 partial waves at trial velocity `v`, sorted by (Im alpha, Re alpha).

    Raises NotSubsonicError unless exactly four of them decay into the substrate.
    """
    if not v > 0.0:
        raise InputError(f"trial velocity must be positive, got {v}")

    N, _, _ = stroh_matrix(v, m, direction, normal)
    alphas, vectors, degenerate, independent = _eigensystem(N)
    if degenerate:
        if warn:
            logger.warning(
                f"Degenerate partial-wave roots at v = {v:.6f} m/s; "
                f"retrying at v(1 + {PERTURBATION:g})"
            )
        N, _, _ = stroh_matrix(v * (1.0 + PERTURBATION), m, direction, normal)
        alphas, vectors, _, independent = _eigensystem(N)
        if not independent:
            raise NotSubsonicError(
                f"partial waves at v = {v:.6f} m/s have a defective repeated root"
            )

    roots = _sorted_roots(alphas, vectors)
    decaying = sum(root.decaying for root in roots)
    if decaying != 4:
        raise NotSubsonicError(
            f"trial velocity {v:.6f} m/s is not subsonic: "
            f"{decaying} decaying partial waves instead of 4"
        )
    return roots


def decaying_roots(roots: List[PartialWaveRoot]) -> List[PartialWaveRoot]:
    return [root for root in roots if root.decaying]


def bulk_velocities(
    m: MaterialSet, direction: ArrayLike = DEFAULT_DIRECTION
) -> NDArray[np.float64]:
    """Piezoelectrically stiffened bulk velocities along `direction`, ascending."""
    m_vec = np.asarray(direction, dtype=float)
    c = voigt_to_full(m.stiffness)
    e = voigt_to_full(m.piezo)
    christoffel = np.einsum("j,ijkl,l->ik", m_vec, c, m_vec)
    gamma = np.einsum("p,pij,j->i", m_vec, e, m_vec)
    eps = float(m_vec @ m.permittivity @ m_vec)
    christoffel = christoffel + np.outer(gamma, gamma) / eps
    return np.sqrt(np.linalg.eigvalsh(christoffel) / m.density)
