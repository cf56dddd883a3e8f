# materials/tensors.py
"""Voigt <-> full index conversion and tensor rotation helpers."""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from handlers.error_handler import InputError

# (i, j) -> Voigt index; the matrices themselves carry no strain factors
VOIGT_PAIRS = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))
VOIGT_INDEX = np.array([[0, 5, 4], [5, 1, 3], [4, 3, 2]])

ORTHOGONALITY_TOL = 1e-10


def voigt_to_full(matrix: ArrayLike) -> NDArray[np.float64]:
    """Expand a 6x6 stiffness or 3x6 piezoelectric Voigt matrix.

    Returns c_ijkl (3x3x3x3) for 6x6 input and e_ikl (3x3x3) for 3x6 input,
    both with full minor symmetry.
    """
    voigt = np.asarray(matrix, dtype=float)
    flat = VOIGT_INDEX.ravel()
    if voigt.shape == (6, 6):
        return voigt[np.ix_(flat, flat)].reshape(3, 3, 3, 3)
    if voigt.shape == (3, 6):
        return voigt[:, flat].reshape(3, 3, 3)
    raise InputError(f"expected a 6x6 or 3x6 Voigt matrix, got shape {voigt.shape}")


def full_to_voigt(tensor: ArrayLike) -> NDArray[np.float64]:
    """Contract a 4-index or 3-index tensor back to Voigt form."""
    full = np.asarray(tensor, dtype=float)
    if full.shape == (3, 3, 3, 3):
        return np.array(
            [[full[i, j, k, l] for k, l in VOIGT_PAIRS] for i, j in VOIGT_PAIRS]
        )
    if full.shape == (3, 3, 3):
        return np.array([[full[i, k, l] for k, l in VOIGT_PAIRS] for i in range(3)])
    raise InputError(f"expected a 3x3x3x3 or 3x3x3 tensor, got shape {full.shape}")


def check_rotation(rotation: ArrayLike) -> NDArray[np.float64]:
    rot = np.asarray(rotation, dtype=float)
    if rot.shape != (3, 3):
        raise InputError(f"rotation must be 3x3, got shape {rot.shape}")
    deviation = np.max(np.abs(rot @ rot.T - np.eye(3)))
    if not deviation <= ORTHOGONALITY_TOL:
        raise InputError(
            f"rotation is not orthogonal (max |R R^T - I| = {deviation:.3e})"
        )
    return rot


def bond_matrix(rotation: ArrayLike) -> NDArray[np.float64]:
    """6x6 stress Bond matrix M, so that c' = M c M^T and e' = R e M^T."""
    rot = check_rotation(rotation)
    bond = np.empty((6, 6))
    for row, (i, j) in enumerate(VOIGT_PAIRS):
        for col, (k, l) in enumerate(VOIGT_PAIRS):
            if k == l:
                bond[row, col] = rot[i, k] * rot[j, l]
            else:
                bond[row, col] = rot[i, k] * rot[j, l] + rot[i, l] * rot[j, k]
    return bond


def is_positive_definite(matrix: ArrayLike) -> bool:
    mat = np.asarray(matrix, dtype=float)
    if not np.allclose(mat, mat.T, rtol=1e-12, atol=0.0):
        return False
    return bool(np.all(np.linalg.eigvalsh(mat) > 0.0))
