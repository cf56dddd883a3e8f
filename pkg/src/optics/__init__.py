# optics/__init__.py

from .device import (
    DeviceConfig,
    ModeConfig,
    SweepPoint,
    build_device,
    iter_sweep_vpi,
    load_device_config,
    reference_device_path,
    sweep_values,
    sweep_vpi,
    with_parameter,
)
from .half_wave_voltage import (
    ModulatorDevice,
    VpiResult,
    length_vpi_product,
    scale_vpi_with_aperture,
    v_pi,
)
from .index_modulation import (
    IndexShift,
    delta_n_y,
    effective_index_shift,
    modulation_antinode,
    modulation_nodes,
    modulation_response,
)
from .optical_mode import KOptConvention, OpticalMode, k_opt
from .standing_wave import (
    SawStandingField,
    StrainAndField,
    displacement_at,
    standing_field,
    strain_and_field_at,
)

__all__ = [
    "DeviceConfig",
    "IndexShift",
    "KOptConvention",
    "ModeConfig",
    "ModulatorDevice",
    "OpticalMode",
    "SawStandingField",
    "StrainAndField",
    "SweepPoint",
    "VpiResult",
    "build_device",
    "delta_n_y",
    "displacement_at",
    "effective_index_shift",
    "iter_sweep_vpi",
    "k_opt",
    "length_vpi_product",
    "load_device_config",
    "modulation_antinode",
    "modulation_nodes",
    "modulation_response",
    "reference_device_path",
    "scale_vpi_with_aperture",
    "standing_field",
    "strain_and_field_at",
    "sweep_values",
    "sweep_vpi",
    "v_pi",
    "with_parameter",
]
