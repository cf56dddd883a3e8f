# optics/device.py
"""Device documents and V_pi sweeps.

A device document names a material file (resolved relative to the document),
the resonator geometry and losses, and the optical mode. `build_device` solves
the Rayleigh wave once; sweeps reuse that solution for every point.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import (
    Any,
    Iterator,
    List,
    Literal,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from config.system_config import settings
from handlers.error_handler import (
    DegeneratePhysicsError,
    InputError,
    first_validation_error,
)
from materials import load_material
from optics.half_wave_voltage import ModulatorDevice, v_pi
from optics.optical_mode import KOptConvention, OpticalMode
from resonator import SawResonator, resonance_frequency, resonator_length
from saw_solver import Boundary, solve_rayleigh
from utils.logger import setup_logger

logger = setup_logger(__name__)

SweepParameter = Literal["z_offset_m", "center_depth_m", "width_W_m"]
SWEEP_PARAMETERS: Tuple[str, ...] = ("z_offset_m", "center_depth_m", "width_W_m")
REFERENCE_DEVICE = (
    Path(__file__).resolve().parents[1] / "data" / "devices" / "reference_device.json"
)


def reference_device_path() -> Path:
    """The bundled reference device document."""
    return REFERENCE_DEVICE


class ModeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    diameter_y_m: float = Field(6.7e-6, gt=0)
    diameter_z_m: float = Field(9.7e-6, gt=0)
    center_depth_m: float = Field(4e-6, ge=0)
    z_offset_m: float = 0.0
    wavelength_m: float = Field(1064e-9, gt=0)
    n_y: Optional[float] = Field(None, gt=1)

    def to_mode(self) -> OpticalMode:
        return OpticalMode(
            diameter_y=self.diameter_y_m,
            diameter_z=self.diameter_z_m,
            center_depth=self.center_depth_m,
            z_offset=self.z_offset_m,
            wavelength=self.wavelength_m,
            n_y=self.n_y,
        )


class DeviceConfig(BaseModel):
    """Device document; `omega_hz` defaults to v / lambda_saw of the solved wave."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    material_file: str = Field(
        ..., description="Material JSON, relative to the document."
    )
    boundary: Boundary = Boundary.FREE
    lambda_saw_m: float = Field(..., gt=0)
    width_W_m: float = Field(..., gt=0)
    length_L_m: float = Field(..., gt=0, description="Mirror gap, m.")
    penetration_depth_m: float = Field(0.0, ge=0)
    gamma_in_hz: float = Field(..., ge=0)
    gamma_ex_hz: float = Field(..., ge=0)
    omega_hz: Optional[float] = Field(None, gt=0)
    detuning_hz: float = 0.0
    z0_ohm: float = Field(default_factory=lambda: settings.Z0_OHM, gt=0)
    k_opt_convention: KOptConvention = Field(
        default_factory=lambda: KOptConvention(settings.K_OPT_CONVENTION)
    )
    bracket_m_s: Optional[Tuple[float, float]] = None
    mode: ModeConfig = Field(default_factory=ModeConfig)


def load_device_config(
    document: Union[str, Path, Mapping[str, Any]], base_dir: Optional[Path] = None
) -> DeviceConfig:
    """Parse a device document; a relative material path is made absolute."""
    if isinstance(document, Mapping):
        raw = dict(document)
        base_dir = base_dir or Path.cwd()
    else:
        path = Path(document)
        if not path.is_file():
            raise InputError(f"device file not found: {path}")
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise InputError(f"device file {path} is not valid JSON: {e}") from e
        if not isinstance(raw, dict):
            raise InputError(f"device file {path} must hold a JSON object")
        base_dir = base_dir or path.resolve().parent

    try:
        config = DeviceConfig.model_validate(raw)
    except ValidationError as e:
        key, message = first_validation_error(e)
        raise InputError(f"device config {key}: {message}") from e

    material = Path(config.material_file)
    if not material.is_absolute():
        material = (base_dir / material).resolve()
    return config.model_copy(update={"material_file": str(material)})


def build_device(config: DeviceConfig) -> ModulatorDevice:
    """Load the material, solve the Rayleigh wave and assemble the modulator."""
    material, photoelastic = load_material(Path(config.material_file))
    solution = solve_rayleigh(
        material,
        boundary=config.boundary,
        wavelength=config.lambda_saw_m,
        bracket=config.bracket_m_s,
    )
    omega_hz = config.omega_hz or resonance_frequency(
        solution.velocity, config.lambda_saw_m
    )
    resonator = SawResonator.from_hz(
        omega_hz=omega_hz,
        gamma_in_hz=config.gamma_in_hz,
        gamma_ex_hz=config.gamma_ex_hz,
        lambda_saw=config.lambda_saw_m,
        length_l=resonator_length(config.length_L_m, config.penetration_depth_m),
        width_w=config.width_W_m,
        density=material.density,
    )
    logger.debug(
        f"Built device on {material.name}: v = {solution.velocity:.6f} m/s, "
        f"Omega/2pi = {omega_hz:.6e} Hz"
    )
    return ModulatorDevice(
        resonator=resonator,
        solution=solution,
        mode=config.mode.to_mode(),
        photoelastic=photoelastic,
        z0_ohm=config.z0_ohm,
        k_opt_convention=config.k_opt_convention,
        detuning=2.0 * math.pi * config.detuning_hz,
    )


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(..., description="Value of the swept parameter.")
    v_pi_V: float = Field(..., description="Half-wave voltage; inf at a node.")


def with_parameter(
    device: ModulatorDevice, parameter: SweepParameter, value: float
) -> ModulatorDevice:
    """Copy of `device` with one sweepable parameter replaced."""
    if parameter == "z_offset_m":
        return device.model_copy(
            update={"mode": device.mode.model_copy(update={"z_offset": value})}
        )
    if parameter == "center_depth_m":
        if value < 0.0:
            raise InputError(f"center_depth_m must be non-negative, got {value}")
        return device.model_copy(
            update={"mode": device.mode.model_copy(update={"center_depth": value})}
        )
    if parameter == "width_W_m":
        if not value > 0.0:
            raise InputError(f"width_W_m must be positive, got {value}")
        return device.model_copy(
            update={
                "resonator": device.resonator.model_copy(update={"width_w": value})
            }
        )
    raise InputError(
        f"unknown sweep parameter {parameter!r}; expected one of {SWEEP_PARAMETERS}"
    )


def _sweep_point(
    device: ModulatorDevice, parameter: SweepParameter, value: float
) -> SweepPoint:
    try:
        result = v_pi(with_parameter(device, parameter, value))
    except DegeneratePhysicsError:
        logger.info(f"No modulation sensitivity at {parameter} = {value:.9e}")
        return SweepPoint(value=value, v_pi_V=math.inf)
    return SweepPoint(value=value, v_pi_V=result.v_pi_V)


def iter_sweep_vpi(
    device: ModulatorDevice,
    parameter: SweepParameter,
    values: Sequence[float],
    workers: Optional[int] = None,
) -> Iterator[SweepPoint]:
    """V_pi at each value of `parameter`, yielded in input order as points finish.

    Points run concurrently; a finished point is held back until every earlier
    one has been yielded. Nodes give inf.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise InputError(
            f"unknown sweep parameter {parameter!r}; expected one of {SWEEP_PARAMETERS}"
        )
    workers = workers or settings.SWEEP_WORKERS
    if workers < 1:
        raise InputError(f"workers must be at least 1, got {workers}")
    logger.info(f"Sweeping {parameter} over {len(values)} points")
    return _ordered_points(device, parameter, [float(v) for v in values], workers)


def _ordered_points(
    device: ModulatorDevice,
    parameter: SweepParameter,
    values: List[float],
    workers: int,
) -> Iterator[SweepPoint]:
    pool = ThreadPoolExecutor(max_workers=workers)
    try:
        futures = [
            pool.submit(_sweep_point, device, parameter, value) for value in values
        ]
        for future in futures:
            yield future.result()
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def sweep_vpi(
    device: ModulatorDevice,
    parameter: SweepParameter,
    values: Sequence[float],
    workers: Optional[int] = None,
) -> List[SweepPoint]:
    """V_pi at each value of `parameter`, in input order; nodes give inf."""
    return list(iter_sweep_vpi(device, parameter, values, workers))


def sweep_values(start: float, stop: float, steps: int) -> List[float]:
    """`steps` evenly spaced values from start to stop inclusive."""
    if steps < 1:
        raise InputError(f"sweep needs at least one step, got {steps}")
    if steps == 1:
        return [float(start)]
    step = (stop - start) / (steps - 1)
    return [start + i * step for i in range(steps)]

