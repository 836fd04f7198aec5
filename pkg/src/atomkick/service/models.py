"""Request and response schemas for the service.

All quantities cross the wire in SI units; field names carry the unit suffix.
Unit conversion for human-friendly inputs (eV, barn, eV/cm^3) happens in the
CLI before a request is built.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class AtomParams(BaseModel):
    n0: int = Field(ge=1, le=150)
    nucleus_mass_kg: float = Field(default=1.66e-27, gt=0)


class CoefficientsRequest(BaseModel):
    atom: AtomParams
    rd_m: Optional[float] = Field(default=None, ge=0)
    delta_e_j: Optional[float] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _one_displacement_source(self):
        if (self.rd_m is None) == (self.delta_e_j is None):
            raise ValueError("provide exactly one of rd_m or delta_e_j")
        return self


class CoefficientRow(BaseModel):
    n: int
    c: float
    c_squared: float


class CoefficientsResponse(BaseModel):
    metadata: dict[str, Any]
    rows: list[CoefficientRow]


class SurvivalRequest(BaseModel):
    n0_min: int = Field(default=1, ge=1)
    n0_max: int = Field(default=60, ge=1, le=150)
    nucleus_mass_kg: float = Field(default=1.66e-27, gt=0)
    delta_e_j: Optional[list[float]] = None
    particle_mass_kg: Optional[float] = Field(default=None, gt=0)
    velocities_m_per_s: Optional[list[float]] = None

    @model_validator(mode="after")
    def _check(self):
        if self.n0_min > self.n0_max:
            raise ValueError("n0_min must not exceed n0_max")
        energies = self.delta_e_j is not None
        particles = self.velocities_m_per_s is not None
        if energies == particles:
            raise ValueError(
                "provide either delta_e_j or (particle_mass_kg and "
                "velocities_m_per_s)"
            )
        if particles and self.particle_mass_kg is None:
            raise ValueError("particle velocities need particle_mass_kg")
        if energies and (not self.delta_e_j or any(v < 0 for v in self.delta_e_j)):
            raise ValueError("delta_e_j must be a non-empty list of values >= 0")
        if particles and (not self.velocities_m_per_s
                          or any(v <= 0 for v in self.velocities_m_per_s)):
            raise ValueError("velocities_m_per_s must be a non-empty list of "
                             "positive values")
        return self


class SurvivalRow(BaseModel):
    n0: int
    delta_e_j: float
    p_n0: float
    p_n0_minus_1: float


class SurvivalResponse(BaseModel):
    metadata: dict[str, Any]
    rows: list[SurvivalRow]


class EvolveRequest(BaseModel):
    atom: AtomParams
    rd_m: Optional[float] = Field(default=None, ge=0)
    delta_e_j: Optional[float] = Field(default=None, ge=0)
    cross_section_m2: float = Field(gt=0)
    flux_per_m2_per_s: float = Field(gt=0)
    t_max_s: float = Field(gt=0)
    t_points: int = Field(default=100, ge=2, le=100_000)

    @model_validator(mode="after")
    def _one_displacement_source(self):
        if (self.rd_m is None) == (self.delta_e_j is None):
            raise ValueError("provide exactly one of rd_m or delta_e_j")
        return self


class SeriesRow(BaseModel):
    t_s: float
    c_n0: float
    c_n0_minus_1: float
    deficit: float


class EvolveResponse(BaseModel):
    metadata: dict[str, Any]
    rows: list[SeriesRow]


class ChannelParams(BaseModel):
    kind: Literal["photon", "massive"]
    energy_density_j_per_m3: Optional[float] = Field(default=None, gt=0)
    frequency_hz: Optional[float] = Field(default=None, gt=0)
    particle_mass_kg: Optional[float] = Field(default=None, gt=0)
    velocity_m_per_s: Optional[float] = Field(default=None, gt=0)
    cross_section_m2: Optional[float] = Field(default=None, gt=0)
    flux_per_m2_per_s: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _fields_for_kind(self):
        if self.kind == "photon":
            if self.energy_density_j_per_m3 is None or self.frequency_hz is None:
                raise ValueError(
                    "photon channels need energy_density_j_per_m3 and frequency_hz"
                )
        else:
            missing = [name for name in ("particle_mass_kg", "velocity_m_per_s",
                                         "cross_section_m2", "flux_per_m2_per_s")
                       if getattr(self, name) is None]
            if missing:
                raise ValueError(f"massive channels need {', '.join(missing)}")
        return self


class ScenarioRequest(BaseModel):
    atom: AtomParams = AtomParams(n0=60)
    preset: Optional[str] = None
    channel: Optional[ChannelParams] = None
    t_max_s: float = Field(gt=0)
    t_points: int = Field(default=100, ge=2, le=100_000)

    @model_validator(mode="after")
    def _one_channel_source(self):
        if (self.preset is None) == (self.channel is None):
            raise ValueError("provide exactly one of preset or channel")
        return self


class ScenarioResponse(BaseModel):
    metadata: dict[str, Any]
    rows: list[SeriesRow]


class VerifyRequest(BaseModel):
    inject_fault: bool = False


class VerifyCheck(BaseModel):
    check_name: str
    grid_description: str
    max_relative_error: float
    tolerance: float
    passed: bool
    detail_rows: list[list[float]] = []


class VerifyResponse(BaseModel):
    metadata: dict[str, Any]
    all_passed: bool
    checks: list[VerifyCheck]


class PresetInfo(BaseModel):
    name: str
    kind: Literal["photon", "massive"]
    parameters: dict[str, float]
    provenance: str


class PresetsResponse(BaseModel):
    metadata: dict[str, Any]
    presets: list[PresetInfo]
