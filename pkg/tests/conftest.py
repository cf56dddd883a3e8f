import json
from pathlib import Path

import pytest

from materials import isotropic_material, load_material, reference_material_path
from optics import build_device, load_device_config, reference_device_path
from saw_solver import Boundary, solve_rayleigh

# lambda = mu gives Poisson ratio 0.25
ISOTROPIC_MU = 30e9
ISOTROPIC_RHO = 3000.0


@pytest.fixture(scope="session")
def lithium_niobate():
    material, _ = load_material(reference_material_path())
    return material


@pytest.fixture(scope="session")
def photoelastic():
    _, constants = load_material(reference_material_path())
    return constants


@pytest.fixture(scope="session")
def isotropic():
    return isotropic_material(
        lame_lambda=ISOTROPIC_MU,
        shear_modulus=ISOTROPIC_MU,
        density=ISOTROPIC_RHO,
        relative_permittivity=5.0,
    )


@pytest.fixture(scope="session")
def free_solution(lithium_niobate):
    return solve_rayleigh(lithium_niobate, Boundary.FREE, 40e-6)


@pytest.fixture(scope="session")
def metalized_solution(lithium_niobate):
    return solve_rayleigh(lithium_niobate, Boundary.METALIZED, 40e-6)


@pytest.fixture(scope="session")
def isotropic_solution(isotropic):
    return solve_rayleigh(isotropic, Boundary.FREE, 40e-6)


@pytest.fixture(scope="session")
def reference_device():
    return build_device(load_device_config(reference_device_path()))


@pytest.fixture
def material_document():
    """The bundled material file as a mutable mapping."""
    return json.loads(Path(reference_material_path()).read_text(encoding="utf-8"))


@pytest.fixture
def device_file(tmp_path):
    """Writes a device document that points at the bundled material."""

    def write(**overrides):
        document = json.loads(Path(reference_device_path()).read_text("utf-8"))
        document["material_file"] = str(reference_material_path())
        document.update(overrides)
        path = tmp_path / "device.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return write
