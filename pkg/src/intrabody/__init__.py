"""Electromagnetic channel toolkit for millimetre-scale links inside tissue.

Submodules:

- ``dielectrics``: relaxation models and tabulated optical constants
- ``pathloss``: spreading, absorption and particle-scattering losses
- ``fresnel``: single-interface reflection, Brewster and critical angles
- ``multilayer``: layered-stack reflection/transmission and impedance
- ``budget``: received power, sensitivity thresholds, feasibility
- ``loaders``: definition-file parsers used by the command line
- ``cli``: the ``intrabody`` command

Sweep kernels run through numba when available; set INTRABODY_KERNELS to
``numpy`` or ``numba`` to pin a backend.
"""
from . import budget, cli, dielectrics, fresnel, loaders, multilayer, pathloss
from ._kernels import BACKEND as KERNEL_BACKEND
from .budget import (
    DETECTORS,
    OPTICAL_TX_DBW,
    THZ_TX_DBW,
    BudgetReport,
    DetectorSpec,
    RadioLink,
    link_feasibility,
    received_power_dbw,
)
from .constants import ETA_0, FIXED_INDEX, SPEED_OF_LIGHT
from .dielectrics import (
    DebyeModel,
    Material,
    debye_permittivity,
    lookup_permittivity,
    material_library,
    material_set_names,
    permittivity_to_index,
)
from .errors import ConfigError, DomainError
from .fresnel import brewster_angle, critical_angle, fresnel_reflection, reflectance_sweep
from .multilayer import (
    DEFAULT_THICKNESS_MM,
    HalfSpace,
    IncidenceSpec,
    Layer,
    LayerStack,
    StackResponse,
    frequency_sweep,
    reverse_stack,
    stack_response,
)
from .pathloss import (
    Beam,
    ParticlePopulation,
    PathLossBreakdown,
    PropagationMedium,
    total_path_loss,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "budget",
    "cli",
    "dielectrics",
    "fresnel",
    "loaders",
    "multilayer",
    "pathloss",
    "DETECTORS",
    "OPTICAL_TX_DBW",
    "THZ_TX_DBW",
    "BudgetReport",
    "DetectorSpec",
    "RadioLink",
    "link_feasibility",
    "received_power_dbw",
    "ETA_0",
    "FIXED_INDEX",
    "SPEED_OF_LIGHT",
    "DebyeModel",
    "Material",
    "debye_permittivity",
    "lookup_permittivity",
    "material_library",
    "material_set_names",
    "permittivity_to_index",
    "ConfigError",
    "DomainError",
    "brewster_angle",
    "critical_angle",
    "fresnel_reflection",
    "reflectance_sweep",
    "DEFAULT_THICKNESS_MM",
    "HalfSpace",
    "IncidenceSpec",
    "Layer",
    "LayerStack",
    "StackResponse",
    "frequency_sweep",
    "reverse_stack",
    "stack_response",
    "Beam",
    "ParticlePopulation",
    "PathLossBreakdown",
    "PropagationMedium",
    "total_path_loss",
]
