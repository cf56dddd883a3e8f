# materials/__init__.py

from .material_set import (
    MaterialSet,
    PhotoelasticConstants,
    isotropic_material,
    load_material,
    reference_material_path,
    rotate_material,
)
from .tensors import bond_matrix, full_to_voigt, voigt_to_full

__all__ = [
    "MaterialSet",
    "PhotoelasticConstants",
    "bond_matrix",
    "full_to_voigt",
    "isotropic_material",
    "load_material",
    "reference_material_path",
    "rotate_material",
    "voigt_to_full",
]
