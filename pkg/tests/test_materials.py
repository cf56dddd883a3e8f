import numpy as np
import pytest
from scipy.constants import epsilon_0

from handlers.error_handler import InputError, MaterialConfigError
from materials import (
    MaterialSet,
    bond_matrix,
    full_to_voigt,
    load_material,
    rotate_material,
    voigt_to_full,
)


def _rotation_x(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _rotation_y(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _relative(a, b):
    return np.max(np.abs(np.asarray(a) - np.asarray(b))) / np.max(np.abs(b))


def test_bundled_constants(lithium_niobate, photoelastic):
    assert lithium_niobate.density == 4700.0
    assert lithium_niobate.stiffness[0, 0] == pytest.approx(203e9)
    assert lithium_niobate.stiffness[3, 0] == pytest.approx(9e9)
    assert lithium_niobate.piezo[1, 3] == pytest.approx(3.7)
    assert lithium_niobate.permittivity[2, 2] == pytest.approx(29.0 * epsilon_0)
    assert photoelastic.n_y == 2.23
    assert photoelastic.p2222 == -0.0261
    assert photoelastic.p2233 == 0.0832
    assert photoelastic.p2223 == 0.1335
    assert photoelastic.r222 == pytest.approx(3.40e-12)
    assert photoelastic.r223 == pytest.approx(9.10e-12)


def test_arrays_are_read_only(lithium_niobate):
    with pytest.raises(ValueError):
        lithium_niobate.stiffness[0, 0] = 0.0


def test_missing_density_names_the_key(material_document):
    del material_document["density_kg_m3"]
    with pytest.raises(MaterialConfigError) as excinfo:
        load_material(material_document)
    assert excinfo.value.key == "density_kg_m3"
    assert "density_kg_m3" in str(excinfo.value)


def test_missing_photoelastic_constant_names_the_key(material_document):
    del material_document["photoelastic"]["p2223"]
    with pytest.raises(MaterialConfigError) as excinfo:
        load_material(material_document)
    assert excinfo.value.key == "photoelastic.p2223"


def test_non_positive_definite_stiffness_rejected(material_document):
    material_document["stiffness_GPa"][0][0] = -203.0
    with pytest.raises(MaterialConfigError) as excinfo:
        load_material(material_document)
    assert excinfo.value.key == "stiffness_GPa"


def test_wrong_piezo_shape_rejected(material_document):
    material_document["piezo_C_m2"] = material_document["piezo_C_m2"][:2]
    with pytest.raises(MaterialConfigError) as excinfo:
        load_material(material_document)
    assert excinfo.value.key == "piezo_C_m2"


def test_non_positive_density_rejected(material_document):
    material_document["density_kg_m3"] = 0.0
    with pytest.raises(MaterialConfigError):
        load_material(material_document)


def test_missing_file_is_an_input_error(tmp_path):
    with pytest.raises(InputError, match="not found"):
        load_material(tmp_path / "absent.json")


def test_voigt_round_trip(lithium_niobate):
    c = voigt_to_full(lithium_niobate.stiffness)
    assert np.array_equal(full_to_voigt(c), lithium_niobate.stiffness)
    e = voigt_to_full(lithium_niobate.piezo)
    assert np.array_equal(full_to_voigt(e), lithium_niobate.piezo)
    # minor and major symmetry of c_ijkl
    assert np.array_equal(c, c.transpose(1, 0, 2, 3))
    assert np.array_equal(c, c.transpose(2, 3, 0, 1))


def test_identity_rotation_returns_same_material(lithium_niobate):
    assert rotate_material(lithium_niobate, np.eye(3)) is lithium_niobate


def test_half_turn_twice_is_identity(lithium_niobate):
    half_turn = _rotation_y(np.pi)
    twice = rotate_material(rotate_material(lithium_niobate, half_turn), half_turn)
    assert _relative(twice.stiffness, lithium_niobate.stiffness) < 1e-9
    assert _relative(twice.piezo, lithium_niobate.piezo) < 1e-9
    assert _relative(twice.permittivity, lithium_niobate.permittivity) < 1e-9


def test_rotation_composition(lithium_niobate):
    r1, r2 = _rotation_x(0.3), _rotation_y(-1.1)
    stepwise = rotate_material(rotate_material(lithium_niobate, r1), r2)
    combined = rotate_material(lithium_niobate, r2 @ r1)
    assert _relative(stepwise.stiffness, combined.stiffness) < 1e-9
    assert _relative(stepwise.piezo, combined.piezo) < 1e-9


def test_rotation_preserves_tensor_norms(lithium_niobate):
    rotated = rotate_material(lithium_niobate, _rotation_x(0.7) @ _rotation_y(0.2))
    for original, turned in (
        (lithium_niobate.stiffness, rotated.stiffness),
        (lithium_niobate.piezo, rotated.piezo),
    ):
        before = np.linalg.norm(voigt_to_full(original))
        after = np.linalg.norm(voigt_to_full(turned))
        assert abs(after - before) / before < 1e-9
    assert np.all(np.linalg.eigvalsh(rotated.stiffness) > 0.0)


def test_bond_matrix_matches_full_tensor_rotation(lithium_niobate):
    rot = _rotation_x(0.4)
    c = voigt_to_full(lithium_niobate.stiffness)
    turned = np.einsum("ia,jb,kc,ld,abcd->ijkl", rot, rot, rot, rot, c)
    bond = bond_matrix(rot)
    rotated = bond @ lithium_niobate.stiffness @ bond.T
    assert _relative(rotated, full_to_voigt(turned)) < 1e-12


def test_non_orthogonal_rotation_rejected(lithium_niobate):
    with pytest.raises(InputError, match="orthogonal"):
        rotate_material(lithium_niobate, np.diag([1.0, 1.0, 1.001]))


def test_material_set_validates_directly():
    with pytest.raises(ValueError):
        MaterialSet(
            name="bad",
            stiffness=np.eye(5),
            piezo=np.zeros((3, 6)),
            permittivity=np.eye(3),
            density=1.0,
        )
