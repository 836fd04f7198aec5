"""Physical constants and the minimal unit system the model needs.

Constant values follow the CODATA 2018 recommended set.  Everything inside the
package runs in SI; named units exist only at the edges (CLI flags, preset
definitions, serialized output).  This is deliberately not a general-purpose
units library: only the dimensions the scattering model touches are covered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

CONSTANT_SET = "CODATA2018"


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values in SI units.

    ``coulomb_constant`` is derived from (hbar, electron_mass, bohr_radius,
    elementary_charge) so that the set is exactly self-consistent; it agrees
    with 1/(4*pi*eps0) built from the CODATA eps0 to ~1.2e-9 relative, which
    is the mutual rounding level of the published values themselves.
    """

    hbar: float = 1.054_571_817e-34            # J*s
    electron_mass: float = 9.109_383_7015e-31  # kg
    coulomb_constant: float = 8_987_551_781.299881  # N*m^2/C^2
    elementary_charge: float = 1.602_176_634e-19    # C
    bohr_radius: float = 5.291_772_109_03e-11  # m
    speed_of_light: float = 299_792_458.0      # m/s
    planck_constant: float = 6.626_070_15e-34  # J*s
    boltzmann_constant: float = 1.380_649e-23  # J/K
    barn: float = 1e-28                        # m^2
    electronvolt: float = 1.602_176_634e-19    # J

    @property
    def coulomb_coupling(self) -> float:
        """k_c * e^2 in J*m, the electron-nucleus interaction strength."""
        return self.coulomb_constant * self.elementary_charge**2

    @property
    def atomic_velocity(self) -> float:
        """k_c * e^2 / hbar in m/s, the ground-state electron velocity scale."""
        return self.coulomb_coupling / self.hbar

    @property
    def rydberg_energy(self) -> float:
        """k_c * e^2 / (2 a_0) in J, the hydrogen binding-energy scale."""
        return self.coulomb_coupling / (2.0 * self.bohr_radius)


CONSTANTS = PhysicalConstants()


class DimensionError(TypeError):
    """Arithmetic or conversion attempted across incompatible dimensions."""


_SECONDS_PER_JULIAN_YEAR = 365.25 * 86400.0

#: unit name -> (dimension tag, factor converting one unit to the SI value)
UNIT_TABLE: dict[str, tuple[str, float]] = {
    # energy (SI: J)
    "J": ("energy", 1.0),
    "eV": ("energy", CONSTANTS.electronvolt),
    "keV": ("energy", CONSTANTS.electronvolt * 1e3),
    "MeV": ("energy", CONSTANTS.electronvolt * 1e6),
    "GeV": ("energy", CONSTANTS.electronvolt * 1e9),
    # mass (SI: kg)
    "kg": ("mass", 1.0),
    "eV/c^2": ("mass", CONSTANTS.electronvolt / CONSTANTS.speed_of_light**2),
    # length (SI: m)
    "m": ("length", 1.0),
    "a0": ("length", CONSTANTS.bohr_radius),
    # time (SI: s)
    "s": ("time", 1.0),
    "yr": ("time", _SECONDS_PER_JULIAN_YEAR),
    # velocity (SI: m/s)
    "m/s": ("velocity", 1.0),
    "c": ("velocity", CONSTANTS.speed_of_light),
    # area (SI: m^2)
    "m^2": ("area", 1.0),
    "cm^2": ("area", 1e-4),
    "barn": ("area", CONSTANTS.barn),
    # particle flux (SI: 1/(m^2 s))
    "1/(m^2 s)": ("flux", 1.0),
    "1/(cm^2 s)": ("flux", 1e4),
    # energy density (SI: J/m^3)
    "J/m^3": ("energy-density", 1.0),
    "eV/cm^3": ("energy-density", CONSTANTS.electronvolt * 1e6),
    "keV/cm^3": ("energy-density", CONSTANTS.electronvolt * 1e9),
    "MeV/cm^3": ("energy-density", CONSTANTS.electronvolt * 1e12),
    # dimensionless
    "1": ("dimensionless", 1.0),
}

DIMENSIONS = frozenset(dim for dim, _ in UNIT_TABLE.values())


@dataclass(frozen=True)
class Quantity:
    """A value tagged with its dimension.

    The stored value is always in the SI unit of the dimension; ``convert``
    re-expresses it in a named unit.  Addition and subtraction across
    mismatched dimensions raise :class:`DimensionError`.
    """

    value: float
    dimension: str

    def __post_init__(self):
        if self.dimension not in DIMENSIONS:
            raise DimensionError(f"unknown dimension {self.dimension!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite quantity value {self.value!r}")

    def _check(self, other: "Quantity") -> None:
        if not isinstance(other, Quantity):
            raise DimensionError(
                f"cannot combine Quantity[{self.dimension}] with {type(other).__name__}"
            )
        if other.dimension != self.dimension:
            raise DimensionError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )

    def __add__(self, other: "Quantity") -> "Quantity":
        self._check(other)
        return Quantity(self.value + other.value, self.dimension)

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._check(other)
        return Quantity(self.value - other.value, self.dimension)

    def __mul__(self, scalar: float) -> "Quantity":
        if isinstance(scalar, Quantity):
            raise DimensionError(
                "Quantity*Quantity products are outside the supported dimension set"
            )
        return Quantity(self.value * float(scalar), self.dimension)

    __rmul__ = __mul__


def _lookup(unit: str) -> tuple[str, float]:
    try:
        return UNIT_TABLE[unit]
    except KeyError:
        raise DimensionError(
            f"unknown unit {unit!r}; known units: {', '.join(sorted(UNIT_TABLE))}"
        ) from None


def quantity(value: float, unit: str) -> Quantity:
    """Build a Quantity from a value expressed in ``unit`` (stored in SI)."""
    dim, factor = _lookup(unit)
    return Quantity(float(value) * factor, dim)


def convert(q: Quantity, unit: str) -> Quantity:
    """Re-express ``q`` in ``unit``; the unit must belong to q's dimension."""
    dim, factor = _lookup(unit)
    if dim != q.dimension:
        raise DimensionError(
            f"cannot convert {q.dimension} to {unit!r} (a {dim} unit)"
        )
    return Quantity(q.value / factor, dim)
