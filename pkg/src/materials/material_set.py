# materials/material_set.py

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from scipy.constants import epsilon_0

from handlers.error_handler import (
    InputError,
    MaterialConfigError,
    first_validation_error,
)
from materials.tensors import bond_matrix, check_rotation, is_positive_definite
from utils.logger import setup_logger

logger = setup_logger(__name__)

GPA = 1e9
REFERENCE_MATERIAL = Path(__file__).resolve().parents[1] / (
    "data/materials/lithium_niobate.json"
)


def _frozen_array(value: Any, shape: Tuple[int, ...]) -> NDArray[np.float64]:
    array = np.array(value, dtype=float)
    if array.shape != shape:
        raise ValueError(f"expected shape {shape}, got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("entries must be finite")
    array.setflags(write=False)
    return array


def _stiffness_array(value: Any) -> NDArray[np.float64]:
    array = _frozen_array(value, (6, 6))
    if not is_positive_definite(array):
        raise ValueError("stiffness must be symmetric positive definite")
    return array


def _piezo_array(value: Any) -> NDArray[np.float64]:
    return _frozen_array(value, (3, 6))


def _permittivity_array(value: Any) -> NDArray[np.float64]:
    array = _frozen_array(value, (3, 3))
    if not is_positive_definite(array):
        raise ValueError("permittivity must be symmetric positive definite")
    return array


def _density_value(value: Any) -> float:
    density = float(value)
    if not (math.isfinite(density) and density > 0.0):
        raise ValueError("density must be positive and finite")
    return density


class MaterialSet(BaseModel):
    """Elastic, piezoelectric and dielectric constants of a crystal (SI units)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(..., description="Text label of the material.")
    stiffness: np.ndarray = Field(
        ..., description="6x6 Voigt stiffness c_IJ at constant field, Pa."
    )
    piezo: np.ndarray = Field(
        ..., description="3x6 piezoelectric stress constants e_iJ, C/m^2."
    )
    permittivity: np.ndarray = Field(
        ..., description="3x3 clamped permittivity eps_ij, F/m."
    )
    density: float = Field(..., gt=0, description="Mass density, kg/m^3.")

    @field_validator("stiffness", mode="before")
    @classmethod
    def _check_stiffness(cls, value: Any) -> NDArray[np.float64]:
        return _stiffness_array(value)

    @field_validator("piezo", mode="before")
    @classmethod
    def _check_piezo(cls, value: Any) -> NDArray[np.float64]:
        return _piezo_array(value)

    @field_validator("permittivity", mode="before")
    @classmethod
    def _check_permittivity(cls, value: Any) -> NDArray[np.float64]:
        return _permittivity_array(value)

    def is_piezoelectric(self) -> bool:
        return bool(np.any(self.piezo != 0.0))


class PhotoelasticConstants(BaseModel):
    """The photoelastic and electro-optic components seen by y-polarized light."""

    model_config = ConfigDict(frozen=True)

    n_y: float = Field(..., gt=1.0, description="Unperturbed refractive index.")
    p2222: float = Field(..., description="Photoelastic constant p_2222.")
    p2233: float = Field(..., description="Photoelastic constant p_2233.")
    p2223: float = Field(..., description="Photoelastic constant p_2223.")
    r222: float = Field(..., description="Clamped electro-optic constant r_222, m/V.")
    r223: float = Field(..., description="Clamped electro-optic constant r_223, m/V.")

    @field_validator("*")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value


class _PhotoelasticDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_y: float
    p2222: float
    p2233: float
    p2223: float
    r222_m_V: float
    r223_m_V: float


class _MaterialDocument(BaseModel):
    """Schema of the material JSON file; keys carry their units."""

    model_config = ConfigDict(extra="allow")

    name: str
    density_kg_m3: float
    stiffness_GPa: List[List[float]]
    piezo_C_m2: List[List[float]]
    permittivity_relative: List[List[float]]
    photoelastic: _PhotoelasticDocument


def _read_document(config_document: Union[str, Path, Mapping[str, Any]]) -> Dict:
    if isinstance(config_document, Mapping):
        return dict(config_document)
    text = str(config_document)
    if isinstance(config_document, Path) or not text.lstrip().startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise InputError(f"material file not found: {path}")
        text = path.read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"material document is not valid JSON: {e}") from e
    if not isinstance(document, dict):
        raise InputError("material document must be a JSON object")
    return document


def load_material(
    config_document: Union[str, Path, Mapping[str, Any]],
) -> Tuple[MaterialSet, PhotoelasticConstants]:
    """Load a material JSON document (text, mapping or file path)."""
    raw = _read_document(config_document)
    try:
        document = _MaterialDocument.model_validate(raw)
    except ValidationError as e:
        raise MaterialConfigError(*first_validation_error(e)) from e

    converters = (
        ("density_kg_m3", "density", lambda: _density_value(document.density_kg_m3)),
        (
            "stiffness_GPa",
            "stiffness",
            lambda: _stiffness_array(np.array(document.stiffness_GPa) * GPA),
        ),
        ("piezo_C_m2", "piezo", lambda: _piezo_array(document.piezo_C_m2)),
        (
            "permittivity_relative",
            "permittivity",
            lambda: _permittivity_array(
                np.array(document.permittivity_relative) * epsilon_0
            ),
        ),
    )
    fields: Dict[str, Any] = {"name": document.name}
    for key, field, convert in converters:
        try:
            fields[field] = convert()
        except ValueError as e:
            raise MaterialConfigError(key, str(e)) from e
    material = MaterialSet(**fields)

    photo = document.photoelastic
    try:
        constants = PhotoelasticConstants(
            n_y=photo.n_y,
            p2222=photo.p2222,
            p2233=photo.p2233,
            p2223=photo.p2223,
            r222=photo.r222_m_V,
            r223=photo.r223_m_V,
        )
    except ValidationError as e:
        key, message = first_validation_error(e)
        raise MaterialConfigError(f"photoelastic.{key}", message) from e

    logger.debug(f"Loaded material '{material.name}' (rho = {material.density} kg/m^3)")
    return material, constants


def reference_material_path() -> Path:
    """Path of the bundled lithium niobate constants file."""
    return REFERENCE_MATERIAL


def rotate_material(m: MaterialSet, rotation: ArrayLike) -> MaterialSet:
    """Express the material tensors in a frame rotated by `rotation`."""
    rot = check_rotation(rotation)
    if np.array_equal(rot, np.eye(3)):
        return m
    bond = bond_matrix(rot)
    stiffness = bond @ m.stiffness @ bond.T
    permittivity = rot @ m.permittivity @ rot.T
    return MaterialSet(
        name=m.name,
        stiffness=0.5 * (stiffness + stiffness.T),
        piezo=rot @ m.piezo @ bond.T,
        permittivity=0.5 * (permittivity + permittivity.T),
        density=m.density,
    )


def isotropic_material(
    lame_lambda: float,
    shear_modulus: float,
    density: float,
    relative_permittivity: float = 1.0,
    name: str = "isotropic",
) -> MaterialSet:
    """Non-piezoelectric isotropic solid, the classical Rayleigh-wave test case."""
    lam, mu = lame_lambda, shear_modulus
    stiffness = np.zeros((6, 6))
    stiffness[:3, :3] = lam
    stiffness[[0, 1, 2], [0, 1, 2]] = lam + 2.0 * mu
    stiffness[[3, 4, 5], [3, 4, 5]] = mu
    return MaterialSet(
        name=name,
        stiffness=stiffness,
        piezo=np.zeros((3, 6)),
        permittivity=np.eye(3) * relative_permittivity * epsilon_0,
        density=density,
    )
