# saw_solver/__init__.py

from .partial_waves import (
    PartialWaveRoot,
    bulk_velocities,
    decaying_roots,
    partial_wave_roots,
)
from .rayleigh import (
    Boundary,
    RayleighSolution,
    boundary_determinant,
    boundary_matrix,
    default_bracket,
    depth_gradient,
    depth_profile,
    electromechanical_coupling,
    solve_rayleigh,
)

__all__ = [
    "Boundary",
    "PartialWaveRoot",
    "RayleighSolution",
    "boundary_determinant",
    "boundary_matrix",
    "bulk_velocities",
    "decaying_roots",
    "default_bracket",
    "depth_gradient",
    "depth_profile",
    "electromechanical_coupling",
    "partial_wave_roots",
    "solve_rayleigh",
]
