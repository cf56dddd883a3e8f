# utils/basetools/__init__.py

from .cavity_tool import CavityInput, CavityOutput, cavity_tool
from .file_reading_tool import SpectrumFileOutput, read_spectrum_file
from .s11_fit_tool import S11FitInput, S11FitOutput, s11_fit_tool
from .saw_velocity_tool import (
    PROFILE_HEADER,
    SawVelocityInput,
    SawVelocityOutput,
    profile_rows,
    saw_velocity_tool,
)
from .sideband_tool import SidebandInput, SidebandOutput, sideband_tool
from .vpi_tool import (
    VpiInput,
    VpiOutput,
    VpiSweepInput,
    VpiSweepOutput,
    iter_vpi_sweep,
    load_modulator,
    sweep_header,
    vpi_sweep_tool,
    vpi_tool,
)

__all__ = [
    "PROFILE_HEADER",
    "CavityInput",
    "CavityOutput",
    "S11FitInput",
    "S11FitOutput",
    "SawVelocityInput",
    "SawVelocityOutput",
    "SidebandInput",
    "SidebandOutput",
    "SpectrumFileOutput",
    "VpiInput",
    "VpiOutput",
    "VpiSweepInput",
    "VpiSweepOutput",
    "cavity_tool",
    "iter_vpi_sweep",
    "load_modulator",
    "profile_rows",
    "read_spectrum_file",
    "s11_fit_tool",
    "saw_velocity_tool",
    "sideband_tool",
    "sweep_header",
    "vpi_sweep_tool",
    "vpi_tool",
]
