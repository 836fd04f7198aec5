"""Concrete scattering environments: photon fields and massive-particle winds.

Photon channel: Thomson scattering off the nucleus with the recoil energy
h^2 nu^2 / (m_N c^2).  The decoherence rate is frequency independent (the
photon count per unit energy density scales as 1/nu while the displacement
scales as nu), so preset frequencies are diagnostic defaults at each field's
spectral peak, nothing more.

Massive channel: direct nucleus collision transferring
dE = (mu/(m_N m_e)) (m_p v_p)^2 at the most probable angle.

Every survival evaluation runs twice: once through the direct closed-form
rate and once through the compositional pipeline (energy transfer ->
displacement -> collision counting).  Both are reported; disagreement beyond
1e-6 relative is surfaced as a model-consistency diagnostic, never averaged
away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CONSTANTS, quantity
from .evolution import EvolutionSeries, survival_vs_time
from .kinematics import ScatterEnergy, displacement_radius
from .projection import AtomSpec

RELATIVISTIC_VELOCITY_FRACTION = 0.1
RATE_CONSISTENCY_RTOL = 1e-6

PRESET_NAMES = ("solar", "lab_lights", "cmb", "cosmic_neutrons", "axion_dm")


@dataclass(frozen=True)
class PhotonChannel:
    """Ambient electromagnetic field: energy density (J/m^3) and a nominal
    frequency (Hz) used only for per-photon diagnostics."""

    energy_density: float
    frequency: float

    def __post_init__(self):
        if self.energy_density <= 0 or self.frequency <= 0:
            raise ValueError("energy density and frequency must be positive")


@dataclass(frozen=True)
class MassiveChannel:
    """Steady wind of massive particles hitting the nucleus."""

    particle_mass: float
    velocity: float
    cross_section: float
    flux: float

    def __post_init__(self):
        for name in ("particle_mass", "velocity", "cross_section", "flux"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def relativistic(self) -> bool:
        """True when v exceeds 0.1c and the non-relativistic formulas strain."""
        return self.velocity > RELATIVISTIC_VELOCITY_FRACTION * CONSTANTS.speed_of_light


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    channel: PhotonChannel | MassiveChannel
    provenance: str


@dataclass(frozen=True)
class ScenarioResult:
    """Survival series plus the two independently evaluated decay rates."""

    series: EvolutionSeries
    rate_direct: float
    rate_compositional: float
    flags: dict

    @property
    def rate_mismatch(self) -> float:
        scale = max(abs(self.rate_direct), abs(self.rate_compositional), 1e-300)
        return abs(self.rate_direct - self.rate_compositional) / scale

    @property
    def consistent(self) -> bool:
        return self.rate_mismatch <= RATE_CONSISTENCY_RTOL


def thomson_cross_section(atom: AtomSpec) -> float:
    """Elastic low-energy photon cross section of the nucleus,
    (8 pi / 3) (k_c e^2 / (m_N c^2))^2, in m^2."""
    radius = CONSTANTS.coulomb_coupling / \
        (atom.nucleus_mass * CONSTANTS.speed_of_light**2)
    return (8.0 * math.pi / 3.0) * radius**2


def photon_energy_transfer(atom: AtomSpec, ch: PhotonChannel) -> ScatterEnergy:
    """Mean recoil energy per scattered photon, h^2 nu^2 / (m_N c^2)."""
    h_nu = CONSTANTS.planck_constant * ch.frequency
    return ScatterEnergy(h_nu**2 / (atom.nucleus_mass * CONSTANTS.speed_of_light**2))


def photon_flux(ch: PhotonChannel) -> float:
    """Photon number flux eta_E c / (h nu) of the ambient field."""
    return ch.energy_density * CONSTANTS.speed_of_light / \
        (CONSTANTS.planck_constant * ch.frequency)


def photon_decay_rate(atom: AtomSpec, ch: PhotonChannel) -> float:
    """Closed-form amplitude decay rate of the prepared level under photon
    scattering, evaluated as exp of summed logs.  Frequency drops out."""
    c = CONSTANTS
    return math.exp(
        0.5 * math.log(8.0) + math.log(math.pi) + math.log(atom.n0)
        + math.log(ch.energy_density) + 2.0 * math.log(c.electron_mass)
        + 3.0 * math.log(c.hbar) - math.log(3.0) - math.log(c.bohr_radius)
        - 3.0 * math.log(atom.reduced_mass) - 3.0 * math.log(atom.nucleus_mass)
        - 4.0 * math.log(c.speed_of_light)
    )


def _compositional_rate(atom: AtomSpec, e: ScatterEnergy, sigma: float,
                        flux: float) -> tuple[float, dict]:
    result = displacement_radius(atom, e)
    x0 = 2.0 * result.r_d_over_a0 / atom.n0
    flags = {
        "validity": result.validity.value,
        "exceeds_binding_energy": result.exceeds_binding_energy,
        "r_d_over_a0": result.r_d_over_a0,
    }
    return (x0 / 2.0) * sigma * flux, flags


def photon_survival(atom: AtomSpec, ch: PhotonChannel, t_grid) -> ScenarioResult:
    """Survival series for a photon environment; both rate paths reported."""
    rate_direct = photon_decay_rate(atom, ch)
    e = photon_energy_transfer(atom, ch)
    sigma = thomson_cross_section(atom)
    flux = photon_flux(ch)
    rate_comp, flags = _compositional_rate(atom, e, sigma, flux)
    d = displacement_radius(atom, e).to_displacement(atom)
    series = survival_vs_time(atom, d, sigma, flux, t_grid)
    flags["channel"] = "photon"
    flags["delta_e_j"] = e.delta_e
    flags["recoil_fraction"] = e.delta_e / (CONSTANTS.planck_constant * ch.frequency)
    return ScenarioResult(series=series, rate_direct=rate_direct,
                          rate_compositional=rate_comp, flags=flags)


def massive_energy_transfer(atom: AtomSpec, ch: MassiveChannel) -> ScatterEnergy:
    """Energy handed to the nucleus at the most probable scattering angle,
    (mu / (m_N m_e)) (m_p v_p)^2."""
    momentum = ch.particle_mass * ch.velocity
    return ScatterEnergy(
        atom.reduced_mass * momentum**2
        / (atom.nucleus_mass * CONSTANTS.electron_mass)
    )


def massive_decay_rate(atom: AtomSpec, ch: MassiveChannel) -> float:
    """Closed-form amplitude decay rate for a massive-particle wind."""
    c = CONSTANTS
    return math.exp(
        math.log(atom.n0) + math.log(ch.cross_section) + math.log(ch.flux)
        + math.log(ch.particle_mass) + math.log(ch.velocity)
        - 0.5 * math.log(8.0) - math.log(c.bohr_radius)
        - math.log(atom.nucleus_mass)
        + 0.5 * (math.log(atom.reduced_mass) - math.log(c.electron_mass))
        + 2.0 * (math.log(c.electron_mass) - math.log(c.coulomb_coupling))
        + 3.0 * (math.log(c.hbar) - math.log(atom.reduced_mass))
    )


def massive_survival(atom: AtomSpec, ch: MassiveChannel, t_grid) -> ScenarioResult:
    """Survival series for a massive-particle environment."""
    rate_direct = massive_decay_rate(atom, ch)
    e = massive_energy_transfer(atom, ch)
    rate_comp, flags = _compositional_rate(atom, e, ch.cross_section, ch.flux)
    d = displacement_radius(atom, e).to_displacement(atom)
    series = survival_vs_time(atom, d, ch.cross_section, ch.flux, t_grid)
    flags["channel"] = "massive"
    flags["delta_e_j"] = e.delta_e
    flags["relativistic"] = ch.relativistic
    return ScenarioResult(series=series, rate_direct=rate_direct,
                          rate_compositional=rate_comp, flags=flags)


def scenario_survival(atom: AtomSpec, channel, t_grid) -> ScenarioResult:
    if isinstance(channel, PhotonChannel):
        return photon_survival(atom, channel, t_grid)
    if isinstance(channel, MassiveChannel):
        return massive_survival(atom, channel, t_grid)
    raise TypeError(f"unsupported channel type {type(channel).__name__}")


def maxwell_mean_speed(temperature: float, mass: float) -> float:
    """Mean Maxwell-Boltzmann speed sqrt(8 k_B T / (pi m))."""
    return math.sqrt(8.0 * CONSTANTS.boltzmann_constant * temperature
                     / (math.pi * mass))


def _build_presets() -> dict[str, ScenarioPreset]:
    presets = {}
    presets["solar"] = ScenarioPreset(
        name="solar",
        channel=PhotonChannel(
            energy_density=quantity(8.49, "MeV/cm^3").value,
            frequency=5.5e14,  # visible peak; diagnostic only
        ),
        provenance="solar radiation at ground level, 8.49 MeV/cm^3",
    )
    presets["lab_lights"] = ScenarioPreset(
        name="lab_lights",
        channel=PhotonChannel(
            energy_density=quantity(1.17, "keV/cm^3").value,
            frequency=5.45e14,
        ),
        provenance="ambient laboratory lighting, 1.17 keV/cm^3",
    )
    presets["cmb"] = ScenarioPreset(
        name="cmb",
        channel=PhotonChannel(
            energy_density=quantity(0.25, "eV/cm^3").value,
            frequency=1.602e11,  # blackbody peak at 2.726 K
        ),
        provenance="cosmic microwave background, 0.25 eV/cm^3",
    )
    neutron_mass = 1.67e-27
    kinetic = quantity(0.07, "GeV").value
    presets["cosmic_neutrons"] = ScenarioPreset(
        name="cosmic_neutrons",
        channel=MassiveChannel(
            particle_mass=neutron_mass,
            velocity=math.sqrt(2.0 * kinetic / neutron_mass),
            cross_section=quantity(3.0, "barn").value,
            flux=2e4,
        ),
        provenance="secondary cosmic-ray neutrons: 2e4 /m^2/s, 3 barn, "
                   "0.07 GeV kinetic (non-relativistic inversion)",
    )
    axion_mass = quantity(1.0, "eV/c^2").value
    axion_temperature = 2.726
    mean_speed = maxwell_mean_speed(axion_temperature, axion_mass)
    local_density = 5.41e-22
    presets["axion_dm"] = ScenarioPreset(
        name="axion_dm",
        channel=MassiveChannel(
            particle_mass=axion_mass,
            velocity=mean_speed,
            cross_section=quantity(0.01, "barn").value,
            flux=(local_density / axion_mass) * mean_speed,
        ),
        provenance="local axion dark matter: 5.41e-22 kg/m^3, 1 eV/c^2, "
                   "0.01 barn, thermalized at 2.726 K "
                   "(flux = density/mass * mean Maxwell speed; "
                   f"kT/mc^2 = {CONSTANTS.boltzmann_constant * axion_temperature / (axion_mass * CONSTANTS.speed_of_light**2):.3e}, "
                   "non-relativistic)",
    )
    return presets


_PRESETS = _build_presets()


def preset(name: str) -> ScenarioPreset:
    """Look up one of the packaged environments by name."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        ) from None


def all_presets() -> tuple[ScenarioPreset, ...]:
    return tuple(_PRESETS[name] for name in PRESET_NAMES)


# -- plain-text config format ------------------------------------------------

_PHOTON_KEYS = ("energy_density_j_per_m3", "frequency_hz")
_MASSIVE_KEYS = ("particle_mass_kg", "velocity_m_per_s", "cross_section_m2",
                 "flux_per_m2_per_s")


def preset_to_config(p: ScenarioPreset) -> str:
    """Serialize a scenario to the key = value block format."""
    lines = [f"name = {p.name}"]
    if isinstance(p.channel, PhotonChannel):
        lines.append("kind = photon")
        lines.append(f"energy_density_j_per_m3 = {p.channel.energy_density!r}")
        lines.append(f"frequency_hz = {p.channel.frequency!r}")
    else:
        lines.append("kind = massive")
        lines.append(f"particle_mass_kg = {p.channel.particle_mass!r}")
        lines.append(f"velocity_m_per_s = {p.channel.velocity!r}")
        lines.append(f"cross_section_m2 = {p.channel.cross_section!r}")
        lines.append(f"flux_per_m2_per_s = {p.channel.flux!r}")
    lines.append(f"provenance = {p.provenance}")
    return "\n".join(lines) + "\n"


def preset_from_config(text: str) -> ScenarioPreset:
    """Parse one scenario block written by :func:`preset_to_config`."""
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line: {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key in fields:
            raise ValueError(
                f"duplicate key {key!r}: a config file holds one scenario"
            )
        fields[key] = value.strip()
    try:
        kind = fields["kind"]
        name = fields["name"]
    except KeyError as missing:
        raise ValueError(f"config is missing the {missing} key") from None
    if kind == "photon":
        channel = PhotonChannel(
            energy_density=float(fields["energy_density_j_per_m3"]),
            frequency=float(fields["frequency_hz"]),
        )
    elif kind == "massive":
        channel = MassiveChannel(
            particle_mass=float(fields["particle_mass_kg"]),
            velocity=float(fields["velocity_m_per_s"]),
            cross_section=float(fields["cross_section_m2"]),
            flux=float(fields["flux_per_m2_per_s"]),
        )
    else:
        raise ValueError(f"unknown channel kind {kind!r}")
    return ScenarioPreset(name=name, channel=channel,
                          provenance=fields.get("provenance", "user"))
