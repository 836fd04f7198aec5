"""Request-model to response-model functions shared by the app and the CLI.

Every reply carries a metadata block with the command name, the constant-set
version, the full parameter echo and the validity flags, so any output file
is self-describing.  Nothing here is stochastic: identical requests produce
identical responses.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from .. import evolution, oracle, scenarios
from ..constants import CONSTANT_SET, CONSTANTS
from ..kinematics import ScatterEnergy, displacement_radius
from ..projection import AtomSpec, Displacement, single_scatter_coefficients
from .models import (
    ChannelParams,
    CoefficientRow,
    CoefficientsRequest,
    CoefficientsResponse,
    EvolveRequest,
    EvolveResponse,
    PresetInfo,
    PresetsResponse,
    ScenarioRequest,
    ScenarioResponse,
    SeriesRow,
    SurvivalRequest,
    SurvivalResponse,
    SurvivalRow,
    VerifyCheck,
    VerifyRequest,
    VerifyResponse,
)


def _base_metadata(command: str) -> dict[str, Any]:
    return {"command": command, "constants": CONSTANT_SET}


def _displaced(atom: AtomSpec, rd_m, delta_e_j) -> tuple[Displacement, dict[str, Any]]:
    """Resolve the displacement from either a direct radius or an energy
    transfer, echoing the derived kinematics."""
    if rd_m is not None:
        d = Displacement.for_atom(atom, rd_m)
        derived: dict[str, Any] = {"rd_m": rd_m, "x0": d.x0}
    else:
        result = displacement_radius(atom, ScatterEnergy(delta_e_j))
        d = result.to_displacement(atom)
        derived = {
            "delta_e_j": delta_e_j,
            "rd_m": result.r_d,
            "rd_over_a0": result.r_d_over_a0,
            "x0": d.x0,
            "tau_s": result.tau,
            "delta_v_m_per_s": result.delta_v,
            "validity": result.validity.value,
            "exceeds_binding_energy": result.exceeds_binding_energy,
        }
    return d, derived


def compute_coefficients(req: CoefficientsRequest) -> CoefficientsResponse:
    atom = AtomSpec.from_nucleus_mass(req.atom.n0, req.atom.nucleus_mass_kg)
    d, derived = _displaced(atom, req.rd_m, req.delta_e_j)
    state = single_scatter_coefficients(atom, d)
    metadata = _base_metadata("coefficients")
    metadata.update({"n0": atom.n0, "nucleus_mass_kg": atom.nucleus_mass})
    metadata.update(derived)
    metadata["leakage"] = state.leakage
    rows = [
        CoefficientRow(n=n, c=state.coefficient(n), c_squared=state.coefficient(n) ** 2)
        for n in range(1, atom.n0 + 1)
    ]
    return CoefficientsResponse(metadata=metadata, rows=rows)


def _neighbor_probability(atom: AtomSpec, d: Displacement) -> float:
    if atom.n0 < 2:
        return 0.0
    return evolution.neighbor_coefficient_after_collisions(atom, d, 1) ** 2


def compute_survival(req: SurvivalRequest) -> SurvivalResponse:
    metadata = _base_metadata("survival")
    metadata.update({
        "n0_min": req.n0_min,
        "n0_max": req.n0_max,
        "nucleus_mass_kg": req.nucleus_mass_kg,
    })
    if req.delta_e_j is not None:
        energy_lists = [("delta_e_j", e) for e in req.delta_e_j]
        metadata["delta_e_j"] = list(req.delta_e_j)
    else:
        # The massive-channel transfer depends only on masses, not on n0.
        metadata["particle_mass_kg"] = req.particle_mass_kg
        metadata["velocities_m_per_s"] = list(req.velocities_m_per_s)
        probe = AtomSpec.from_nucleus_mass(1, req.nucleus_mass_kg)
        energy_lists = []
        for v in req.velocities_m_per_s:
            channel = scenarios.MassiveChannel(
                particle_mass=req.particle_mass_kg, velocity=v,
                cross_section=1.0, flux=1.0)
            energy_lists.append(
                (f"vp={v!r}", scenarios.massive_energy_transfer(probe, channel).delta_e))

    rows: list[SurvivalRow] = []
    for n0 in range(req.n0_min, req.n0_max + 1):
        atom = AtomSpec.from_nucleus_mass(n0, req.nucleus_mass_kg)
        for _, delta_e in energy_lists:
            result = displacement_radius(atom, ScatterEnergy(delta_e))
            d = result.to_displacement(atom)
            rows.append(SurvivalRow(
                n0=n0,
                delta_e_j=delta_e,
                p_n0=single_scatter_coefficients(atom, d).survival ** 2,
                p_n0_minus_1=_neighbor_probability(atom, d),
            ))

    # A strictly interior maximum of the neighbor population marks where the
    # displacement approaches the atom size within the sweep.
    for label, delta_e in energy_lists:
        series = [(r.n0, r.p_n0_minus_1) for r in rows if r.delta_e_j == delta_e]
        if len(series) < 3:
            continue
        values = [p for _, p in series]
        peak = max(range(len(values)), key=values.__getitem__)
        if 0 < peak < len(values) - 1 and values[peak] > 0:
            n0_at = series[peak][0]
            atom = AtomSpec.from_nucleus_mass(n0_at, req.nucleus_mass_kg)
            ratio = displacement_radius(atom, ScatterEnergy(delta_e)).r_d_over_a0
            metadata[f"interior_maximum[{label}]"] = (
                f"n0={n0_at} p_n0_minus_1={values[peak]!r} rd_over_a0={ratio!r}"
            )
    return SurvivalResponse(metadata=metadata, rows=rows)


def compute_evolve(req: EvolveRequest) -> EvolveResponse:
    atom = AtomSpec.from_nucleus_mass(req.atom.n0, req.atom.nucleus_mass_kg)
    d, derived = _displaced(atom, req.rd_m, req.delta_e_j)
    t_grid = np.linspace(0.0, req.t_max_s, req.t_points)
    series = evolution.survival_vs_time(
        atom, d, req.cross_section_m2, req.flux_per_m2_per_s, t_grid)
    metadata = _base_metadata("evolve")
    metadata.update({
        "n0": atom.n0,
        "nucleus_mass_kg": atom.nucleus_mass,
        "cross_section_m2": req.cross_section_m2,
        "flux_per_m2_per_s": req.flux_per_m2_per_s,
        "t_max_s": req.t_max_s,
        "t_points": req.t_points,
        "amplitude_decay_rate_per_s":
            0.5 * d.x0 * req.cross_section_m2 * req.flux_per_m2_per_s,
    })
    metadata.update(derived)
    return EvolveResponse(metadata=metadata, rows=_series_rows(series))


def _series_rows(series: evolution.EvolutionSeries) -> list[SeriesRow]:
    return [
        SeriesRow(t_s=float(t), c_n0=float(c0), c_n0_minus_1=float(c1),
                  deficit=float(df))
        for t, c0, c1, df in zip(series.t, series.c_n0,
                                 series.c_n0_minus_1, series.deficit)
    ]


def _channel_from_params(params: ChannelParams):
    if params.kind == "photon":
        return scenarios.PhotonChannel(
            energy_density=params.energy_density_j_per_m3,
            frequency=params.frequency_hz,
        )
    return scenarios.MassiveChannel(
        particle_mass=params.particle_mass_kg,
        velocity=params.velocity_m_per_s,
        cross_section=params.cross_section_m2,
        flux=params.flux_per_m2_per_s,
    )


def _channel_echo(channel) -> dict[str, float]:
    if isinstance(channel, scenarios.PhotonChannel):
        return {
            "channel.energy_density_j_per_m3": channel.energy_density,
            "channel.frequency_hz": channel.frequency,
        }
    return {
        "channel.particle_mass_kg": channel.particle_mass,
        "channel.velocity_m_per_s": channel.velocity,
        "channel.cross_section_m2": channel.cross_section,
        "channel.flux_per_m2_per_s": channel.flux,
    }


def compute_scenario(req: ScenarioRequest) -> ScenarioResponse:
    if req.preset is not None:
        chosen = scenarios.preset(req.preset)
        channel = chosen.channel
        provenance = chosen.provenance
        source = chosen.name
    else:
        channel = _channel_from_params(req.channel)
        provenance = "user"
        source = "custom"
    atom = AtomSpec.from_nucleus_mass(req.atom.n0, req.atom.nucleus_mass_kg)
    t_grid = np.linspace(0.0, req.t_max_s, req.t_points)
    result = scenarios.scenario_survival(atom, channel, t_grid)
    metadata = _base_metadata("scenario")
    metadata.update({
        "scenario": source,
        "provenance": provenance,
        "n0": atom.n0,
        "nucleus_mass_kg": atom.nucleus_mass,
        "t_max_s": req.t_max_s,
        "t_points": req.t_points,
        "rate_direct_per_s": result.rate_direct,
        "rate_compositional_per_s": result.rate_compositional,
        "rate_mismatch": result.rate_mismatch,
        "rates_consistent": result.consistent,
    })
    metadata.update(_channel_echo(channel))
    for key, value in sorted(result.flags.items()):
        metadata[f"flags.{key}"] = value
    return ScenarioResponse(metadata=metadata, rows=_series_rows(result.series))


def run_verify(req: VerifyRequest) -> VerifyResponse:
    reports = oracle.run_all(inject_fault=req.inject_fault)
    checks = [
        VerifyCheck(
            check_name=r.check_name,
            grid_description=r.grid_description,
            max_relative_error=r.max_relative_error,
            tolerance=r.tolerance,
            passed=r.passed,
            detail_rows=[[float(v) for v in row] for row in r.detail_rows],
        )
        for r in reports
    ]
    metadata = _base_metadata("verify")
    metadata["inject_fault"] = req.inject_fault
    metadata["checks"] = len(checks)
    return VerifyResponse(
        metadata=metadata,
        all_passed=all(c.passed for c in checks),
        checks=checks,
    )


def list_presets() -> PresetsResponse:
    infos = []
    for p in scenarios.all_presets():
        if isinstance(p.channel, scenarios.PhotonChannel):
            kind = "photon"
            params = {
                "energy_density_j_per_m3": p.channel.energy_density,
                "frequency_hz": p.channel.frequency,
            }
        else:
            kind = "massive"
            params = {
                "particle_mass_kg": p.channel.particle_mass,
                "velocity_m_per_s": p.channel.velocity,
                "cross_section_m2": p.channel.cross_section,
                "flux_per_m2_per_s": p.channel.flux,
            }
        infos.append(PresetInfo(name=p.name, kind=kind, parameters=params,
                                provenance=p.provenance))
    return PresetsResponse(metadata=_base_metadata("presets"), presets=infos)
