"""Scattering-induced decoherence of excited atoms via sudden nuclear recoil.

A single low-energy scattering displaces the nucleus faster than the electron
can follow; the electron state is then re-expanded over the basis attached to
the displaced potential, populating lower levels only.  This package provides
the closed-form projection coefficients and their brute-force checks, the
recoil kinematics, multi-collision time evolution, concrete photon and
massive-particle environments, an HTTP service, and a CLI.
"""

__version__ = "0.1.0"

from .constants import CONSTANT_SET, CONSTANTS, DimensionError, Quantity, \
    convert, quantity
from .evolution import (
    CollisionCount,
    EvolutionSeries,
    TransferMatrix,
    coefficients_after_collisions,
    coefficients_after_sequence,
    collision_count,
    neighbor_coefficient_after_collisions,
    survival_after_collisions,
    survival_vs_time,
    transfer_matrix,
)
from .kinematics import (
    DisplacementResult,
    ScatterEnergy,
    Validity,
    displacement_radius,
    interaction_time,
    recoil_velocity,
    survival_amplitude,
)
from .projection import (
    AtomSpec,
    Displacement,
    RadialSuperposition,
    delta_l_transition_probability,
    expansion_identity_residual,
    overlap_oracle,
    shifted_wavefunction,
    single_scatter_coefficients,
    true_scale_overlap,
)
from .scenarios import (
    MassiveChannel,
    PhotonChannel,
    ScenarioPreset,
    ScenarioResult,
    all_presets,
    massive_energy_transfer,
    massive_survival,
    photon_energy_transfer,
    photon_survival,
    preset,
    scenario_survival,
    thomson_cross_section,
)
from .special import hydrogenic_radial, laguerre, log_factorial_ratio

__all__ = [
    "AtomSpec",
    "CollisionCount",
    "CONSTANT_SET",
    "CONSTANTS",
    "DimensionError",
    "Displacement",
    "DisplacementResult",
    "EvolutionSeries",
    "MassiveChannel",
    "PhotonChannel",
    "Quantity",
    "RadialSuperposition",
    "ScatterEnergy",
    "ScenarioPreset",
    "ScenarioResult",
    "TransferMatrix",
    "Validity",
    "all_presets",
    "coefficients_after_collisions",
    "coefficients_after_sequence",
    "collision_count",
    "convert",
    "delta_l_transition_probability",
    "displacement_radius",
    "expansion_identity_residual",
    "hydrogenic_radial",
    "interaction_time",
    "laguerre",
    "log_factorial_ratio",
    "massive_energy_transfer",
    "massive_survival",
    "neighbor_coefficient_after_collisions",
    "overlap_oracle",
    "photon_energy_transfer",
    "photon_survival",
    "preset",
    "quantity",
    "recoil_velocity",
    "scenario_survival",
    "shifted_wavefunction",
    "single_scatter_coefficients",
    "survival_after_collisions",
    "survival_amplitude",
    "survival_vs_time",
    "thomson_cross_section",
    "transfer_matrix",
    "true_scale_overlap",
]
