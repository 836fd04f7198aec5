import math

import numpy as np
import pytest

from atomkick.constants import CONSTANTS
from atomkick.kinematics import (
    DisplacementResult,
    ScatterEnergy,
    Validity,
    displacement_radius,
    interaction_time,
    interaction_time_direct,
    recoil_velocity,
    survival_amplitude,
)
from atomkick.projection import AtomSpec, single_scatter_coefficients
from atomkick.scenarios import MassiveChannel, massive_energy_transfer

A0 = CONSTANTS.bohr_radius
EV = CONSTANTS.electronvolt
NUCLEUS = 1.66e-27


def atom_for(n0, nucleus_mass=NUCLEUS):
    return AtomSpec.from_nucleus_mass(n0, nucleus_mass)


class TestInteractionTime:
    def test_quadratic_in_level(self):
        assert interaction_time(atom_for(20)) / interaction_time(atom_for(10)) == 4.0

    def test_inverse_cube_in_reduced_mass(self):
        base = atom_for(5)
        heavy = AtomSpec(n0=5, nucleus_mass=base.nucleus_mass,
                         reduced_mass=base.reduced_mass / 2.0)
        # halving mu multiplies the period by 8; doubling divides by 8
        assert interaction_time(heavy) / interaction_time(base) == 8.0

    def test_grouped_form_matches_literal_formula(self):
        for n0 in (1, 12, 60):
            atom = atom_for(n0)
            grouped = interaction_time(atom)
            literal = interaction_time_direct(atom)
            assert grouped == pytest.approx(literal, rel=1e-12)

    def test_hydrogen_scale(self):
        # quarter of the atomic time unit, up to the reduced-mass correction
        atom = AtomSpec(n0=1, nucleus_mass=NUCLEUS,
                        reduced_mass=CONSTANTS.electron_mass)
        atomic_time = A0**2 * CONSTANTS.electron_mass / CONSTANTS.hbar
        assert interaction_time(atom) == pytest.approx(atomic_time / 4.0,
                                                       rel=1e-12)


class TestRecoilVelocity:
    def test_zero_energy(self):
        assert recoil_velocity(atom_for(3), ScatterEnergy(0.0)) == 0.0

    def test_square_root_scaling(self):
        atom = atom_for(3)
        v1 = recoil_velocity(atom, ScatterEnergy(1e-22))
        v4 = recoil_velocity(atom, ScatterEnergy(4e-22))
        assert v4 == 2.0 * v1

    def test_thermal_neutron_transfer(self):
        value = recoil_velocity(atom_for(1), ScatterEnergy(0.025 * EV))
        assert value == pytest.approx(2196.7779211699485, rel=1e-12)

    def test_negative_energy_rejected(self):
        with pytest.raises(ValueError):
            ScatterEnergy(-1e-25)


class TestDisplacementRadius:
    def test_zero_energy(self):
        result = displacement_radius(atom_for(4), ScatterEnergy(0.0))
        assert result.r_d == 0.0
        assert result.r_d_over_a0 == 0.0
        assert result.validity is Validity.OK

    def test_level_scaling_at_fixed_energy(self):
        e = ScatterEnergy(1e-24)
        r1 = displacement_radius(atom_for(10), e)
        r2 = displacement_radius(atom_for(20), e)
        assert r2.r_d_over_a0 / r1.r_d_over_a0 == pytest.approx(4.0, rel=1e-12)

    def test_product_identity(self):
        result = displacement_radius(atom_for(15), ScatterEnergy(3e-23))
        assert result.r_d == result.delta_v * result.tau

    def test_log_form_matches_plain_ratio(self):
        result = displacement_radius(atom_for(15), ScatterEnergy(3e-23))
        assert result.r_d_over_a0 == pytest.approx(result.r_d / A0, rel=1e-13)

    def test_cold_neutron_anchor(self):
        # a full 0.025 eV transfer reaches a tenth of the Bohr radius
        # near level 20; frozen as the kinematics regression anchor
        e = ScatterEnergy(0.025 * EV)
        base = displacement_radius(atom_for(1), e).r_d_over_a0
        n0_star = math.sqrt(0.1 / base)
        assert n0_star == pytest.approx(19.942176166064762, rel=1e-9)
        assert 19.0 < n0_star < 21.0
        at_anchor = displacement_radius(atom_for(20), e)
        assert at_anchor.r_d_over_a0 == pytest.approx(0.1, rel=0.01)
        assert at_anchor.validity is Validity.OK

    def test_beyond_model_flag(self):
        result = displacement_radius(atom_for(60), ScatterEnergy(10.0 * EV))
        assert result.r_d_over_a0 >= 1.0
        assert result.validity is Validity.BEYOND_MODEL

    def test_near_atom_scale_flag(self):
        # only reachable for the ground state: r_d within [a0/2, a0)
        atom = atom_for(1)
        for fraction in (0.6, 0.9):
            target_dv = fraction * A0 / interaction_time(atom)
            e = ScatterEnergy(0.5 * atom.nucleus_mass * target_dv**2)
            result = displacement_radius(atom, e)
            assert 0.5 <= result.r_d_over_a0 < 1.0
            assert result.validity is Validity.NEAR_ATOM_SCALE

    def test_binding_energy_flag(self):
        atom = atom_for(30)
        threshold = atom.binding_energy
        assert not displacement_radius(atom, ScatterEnergy(threshold * 0.9)
                                       ).exceeds_binding_energy
        assert displacement_radius(atom, ScatterEnergy(threshold * 1.1)
                                   ).exceeds_binding_energy


class TestSurvivalAmplitude:
    def test_zero_energy(self):
        assert survival_amplitude(atom_for(8), ScatterEnergy(0.0)) == 1.0

    def test_always_a_decay(self):
        for n0 in (1, 10, 60):
            for e_j in (1e-30, 1e-24, 1e-20, 1e-17):
                value = survival_amplitude(atom_for(n0), ScatterEnergy(e_j))
                assert 0.0 < value <= 1.0

    def test_log_amplitude_linear_in_level(self):
        e = ScatterEnergy(1e-23)
        logs = [math.log(survival_amplitude(atom_for(n0), e))
                for n0 in (10, 20, 40)]
        assert logs[1] / logs[0] == pytest.approx(2.0, rel=1e-10)
        assert logs[2] / logs[0] == pytest.approx(4.0, rel=1e-10)

    def test_monotone_in_level_and_energy(self):
        energies = [ScatterEnergy(f * EV) for f in (1e-4, 1e-3, 1e-2)]
        for e in energies:
            probabilities = [survival_amplitude(atom_for(n0), e) ** 2
                             for n0 in range(1, 61)]
            assert all(b < a for a, b in zip(probabilities, probabilities[1:]))
        for n0 in (2, 25, 60):
            row = [survival_amplitude(atom_for(n0), e) ** 2 for e in energies]
            assert row[0] > row[1] > row[2]

    def test_bitwise_equality_with_projection(self):
        for n0 in (3, 20, 75):
            atom = atom_for(n0)
            e = ScatterEnergy(2e-23)
            d = displacement_radius(atom, e).to_displacement(atom)
            assert survival_amplitude(atom, e) == \
                single_scatter_coefficients(atom, d).survival


class TestNeighborPopulationPeak:
    def test_interior_maximum_when_displacement_nears_atom_size(self):
        # slow neutron-mass projectile; the neighbor population must peak
        # strictly inside the sweep once r_d/a0 crosses ~0.5 within it
        channel = MassiveChannel(particle_mass=1.67e-27, velocity=1.0e4,
                                 cross_section=1e-28, flux=1.0)
        probe = atom_for(1)
        e = massive_energy_transfer(probe, channel)
        populations = []
        ratios = []
        for n0 in range(2, 61):
            atom = atom_for(n0)
            result = displacement_radius(atom, e)
            d = result.to_displacement(atom)
            populations.append(
                single_scatter_coefficients(atom, d).coefficient(n0 - 1) ** 2)
            ratios.append(result.r_d_over_a0)
        assert max(ratios) >= 0.5
        peak = int(np.argmax(populations))
        assert 0 < peak < len(populations) - 1
        n0_at_peak = peak + 2
        assert 15 <= n0_at_peak <= 35
