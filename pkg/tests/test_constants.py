import dataclasses
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomkick.constants import (
    CONSTANTS,
    DimensionError,
    Quantity,
    UNIT_TABLE,
    convert,
    quantity,
)


def test_constant_set_is_internally_consistent():
    derived_bohr = CONSTANTS.hbar**2 / (
        CONSTANTS.electron_mass * CONSTANTS.coulomb_constant
        * CONSTANTS.elementary_charge**2
    )
    assert abs(derived_bohr - CONSTANTS.bohr_radius) / CONSTANTS.bohr_radius < 1e-9


def test_all_constants_positive():
    for field in dataclasses.fields(CONSTANTS):
        assert getattr(CONSTANTS, field.name) > 0, field.name


def test_rydberg_energy_matches_accepted_value():
    assert CONSTANTS.rydberg_energy / CONSTANTS.electronvolt == \
        pytest.approx(13.605693, rel=1e-6)


def test_barn_definition():
    assert quantity(1.0, "barn").value == 1e-28


def test_thermal_ev_to_joule():
    q = quantity(0.025, "eV")
    assert q.value == pytest.approx(4.005441585e-21, rel=1e-12)
    assert q.dimension == "energy"


def test_energy_density_mev_per_cm3_to_si():
    # independent hand computation: 8.49e6 * 1.602176634e-19 J/eV * 1e6 cm^3/m^3
    q = quantity(8.49, "MeV/cm^3")
    assert q.value == pytest.approx(1.360247962266e-06, rel=1e-12)
    back = convert(q, "MeV/cm^3")
    assert back.value == pytest.approx(8.49, rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(
    unit=st.sampled_from(sorted(UNIT_TABLE)),
    value=st.floats(min_value=1e-12, max_value=1e12,
                    allow_nan=False, allow_infinity=False),
)
def test_conversion_round_trip(unit, value):
    q = quantity(value, unit)
    again = quantity(convert(q, unit).value, unit)
    assert again.value == pytest.approx(q.value, rel=1e-14)


def test_convert_rejects_foreign_dimension():
    q = quantity(1.0, "eV")
    with pytest.raises(DimensionError) as excinfo:
        convert(q, "kg")
    assert "energy" in str(excinfo.value) and "mass" in str(excinfo.value)


def test_arithmetic_requires_matching_dimensions():
    with pytest.raises(DimensionError):
        quantity(1.0, "eV") + quantity(1.0, "kg")
    with pytest.raises(DimensionError):
        quantity(1.0, "m") - quantity(1.0, "s")
    total = quantity(1.0, "eV") + quantity(2.0, "eV")
    assert total.value == pytest.approx(quantity(3.0, "eV").value)
    assert (2.0 * quantity(1.5, "barn")).value == quantity(3.0, "barn").value


def test_quantity_rejects_unknown_dimension():
    with pytest.raises(DimensionError):
        Quantity(1.0, "charm")


def test_mass_in_ev_per_c_squared():
    axion = quantity(1.0, "eV/c^2")
    expected = CONSTANTS.electronvolt / CONSTANTS.speed_of_light**2
    assert axion.value == expected
    assert axion.dimension == "mass"


def test_year_is_julian():
    assert quantity(1.0, "yr").value == pytest.approx(3.15576e7, rel=1e-12)
