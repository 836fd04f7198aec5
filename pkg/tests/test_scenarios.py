import math

import numpy as np
import pytest

from atomkick.constants import CONSTANTS, quantity
from atomkick.projection import AtomSpec
from atomkick.scenarios import (
    MassiveChannel,
    PhotonChannel,
    PRESET_NAMES,
    all_presets,
    massive_energy_transfer,
    massive_survival,
    maxwell_mean_speed,
    photon_decay_rate,
    photon_energy_transfer,
    photon_survival,
    preset,
    preset_from_config,
    preset_to_config,
    scenario_survival,
    thomson_cross_section,
)

NUCLEUS = 1.66e-27
YEAR = 3.15576e7


def atom_for(n0):
    return AtomSpec.from_nucleus_mass(n0, NUCLEUS)


class TestThomsonCrossSection:
    def test_inverse_square_mass_scaling(self):
        light = thomson_cross_section(atom_for(5))
        heavy = thomson_cross_section(AtomSpec.from_nucleus_mass(5, 2 * NUCLEUS))
        assert heavy / light == pytest.approx(0.25, rel=1e-12)

    def test_anchored_to_electron_value(self):
        # known free-electron cross section, rescaled by the mass ratio
        sigma = thomson_cross_section(atom_for(1))
        electron_thomson = 6.6524587e-29
        expected = electron_thomson * (CONSTANTS.electron_mass / NUCLEUS) ** 2
        assert sigma == pytest.approx(expected, rel=1e-5)

    def test_positive_and_finite(self):
        for mass in (1e-27, 1e-25, 4e-25):
            value = thomson_cross_section(AtomSpec.from_nucleus_mass(3, mass))
            assert 0.0 < value < math.inf


class TestPhotonChannel:
    def test_recoil_quadratic_in_frequency(self):
        atom = atom_for(5)
        low = photon_energy_transfer(atom, PhotonChannel(1e-10, 1e12)).delta_e
        high = photon_energy_transfer(atom, PhotonChannel(1e-10, 2e12)).delta_e
        assert high == 4.0 * low

    def test_microwave_background_peak_recoil(self):
        atom = atom_for(1)
        delta_e = photon_energy_transfer(atom, PhotonChannel(4e-14, 160.2e9)).delta_e
        assert delta_e == pytest.approx(7.552445299444496e-35, rel=1e-12)

    def test_recoil_fraction_is_tiny_for_presets(self):
        atom = atom_for(60)
        for name in ("solar", "lab_lights", "cmb"):
            channel = preset(name).channel
            delta_e = photon_energy_transfer(atom, channel).delta_e
            photon_energy = CONSTANTS.planck_constant * channel.frequency
            assert delta_e / photon_energy < 1e-6

    def test_survival_starts_at_unity(self):
        atom = atom_for(60)
        result = photon_survival(atom, preset("cmb").channel,
                                 np.linspace(0.0, YEAR, 4))
        assert result.series.c_n0[0] == 1.0
        assert result.series.deficit[0] == 0.0

    def test_rate_is_frequency_independent(self):
        atom = atom_for(60)
        eta = preset("solar").channel.energy_density
        rates = []
        for nu in np.logspace(9, 15, 13):
            result = photon_survival(atom, PhotonChannel(eta, float(nu)),
                                     np.array([0.0, 1.0]))
            rates.append(result.rate_compositional)
        spread = (max(rates) - min(rates)) / min(rates)
        assert spread < 1e-10

    def test_both_rate_paths_agree(self):
        atom = atom_for(60)
        for name in ("solar", "lab_lights", "cmb"):
            result = photon_survival(atom, preset(name).channel,
                                     np.array([0.0, YEAR]))
            assert result.rate_mismatch < 1e-6
            assert result.consistent

    def test_energy_density_ordering(self):
        atom = atom_for(60)
        t = np.array([0.0, YEAR])
        deficits = {
            name: photon_survival(atom, preset(name).channel, t).series.deficit[1]
            for name in ("solar", "lab_lights", "cmb")
        }
        assert deficits["solar"] > deficits["lab_lights"] > deficits["cmb"]


class TestMassiveChannel:
    def test_zero_velocity_rejected_by_channel(self):
        with pytest.raises(ValueError):
            MassiveChannel(particle_mass=1e-27, velocity=0.0,
                           cross_section=1e-28, flux=1.0)

    def test_transfer_quadratic_in_momentum(self):
        atom = atom_for(5)
        slow = massive_energy_transfer(
            atom, MassiveChannel(1e-27, 1e3, 1e-28, 1.0)).delta_e
        fast = massive_energy_transfer(
            atom, MassiveChannel(1e-27, 2e3, 1e-28, 1.0)).delta_e
        assert fast == 4.0 * slow

    def test_neutron_preset_velocity(self):
        channel = preset("cosmic_neutrons").channel
        kinetic = quantity(0.07, "GeV").value
        assert channel.velocity == pytest.approx(
            math.sqrt(2.0 * kinetic / channel.particle_mass), rel=1e-14)
        assert channel.velocity == pytest.approx(1.15894007e8, rel=1e-8)
        assert channel.relativistic  # ~0.39 c: the formulas strain here

    def test_both_rate_paths_agree(self):
        atom = atom_for(60)
        for name in ("cosmic_neutrons", "axion_dm"):
            result = massive_survival(atom, preset(name).channel,
                                      np.array([0.0, YEAR]))
            assert result.rate_mismatch < 1e-6

    def test_dark_matter_dominates_cosmic_neutrons(self):
        atom = atom_for(60)
        t = np.linspace(0.0, YEAR, 6)
        axion = massive_survival(atom, preset("axion_dm").channel, t)
        neutron = massive_survival(atom, preset("cosmic_neutrons").channel, t)
        assert np.all(axion.series.deficit[1:] > neutron.series.deficit[1:])


class TestPresets:
    def test_exactly_the_packaged_environments(self):
        assert tuple(p.name for p in all_presets()) == PRESET_NAMES

    def test_cmb_energy_density(self):
        assert preset("cmb").channel.energy_density == \
            quantity(0.25, "eV/cm^3").value

    def test_lab_energy_density(self):
        assert preset("lab_lights").channel.energy_density == \
            quantity(1.17, "keV/cm^3").value

    def test_axion_cross_section(self):
        assert preset("axion_dm").channel.cross_section == \
            quantity(0.01, "barn").value
        assert preset("axion_dm").channel.cross_section == \
            pytest.approx(1e-30, rel=1e-15)

    def test_neutron_flux_and_cross_section(self):
        channel = preset("cosmic_neutrons").channel
        assert channel.flux == 2e4
        assert channel.cross_section == 3e-28

    def test_axion_flux_closure(self):
        # flux = (density / mass) * mean thermal speed at 2.726 K
        channel = preset("axion_dm").channel
        mass = quantity(1.0, "eV/c^2").value
        speed = maxwell_mean_speed(2.726, mass)
        assert speed == pytest.approx(7332298.388457598, rel=1e-12)
        assert channel.velocity == speed
        assert channel.flux == pytest.approx((5.41e-22 / mass) * speed,
                                             rel=1e-14)

    def test_axion_thermal_regime_is_non_relativistic(self):
        channel = preset("axion_dm").channel
        thermal_ratio = CONSTANTS.boltzmann_constant * 2.726 / \
            (channel.particle_mass * CONSTANTS.speed_of_light**2)
        assert thermal_ratio < 1e-3
        assert not channel.relativistic
        assert "non-relativistic" in preset("axion_dm").provenance

    def test_unknown_preset_lists_valid_names(self):
        with pytest.raises(ValueError) as excinfo:
            preset("sunlight")
        message = str(excinfo.value)
        for name in PRESET_NAMES:
            assert name in message

    def test_config_round_trip(self):
        for name in PRESET_NAMES:
            original = preset(name)
            parsed = preset_from_config(preset_to_config(original))
            assert parsed == original

    def test_config_rejects_malformed_input(self):
        with pytest.raises(ValueError):
            preset_from_config("kind photon\n")
        with pytest.raises(ValueError):
            preset_from_config("name = x\nkind = exotic\n")

    def test_config_rejects_concatenated_blocks(self):
        two_blocks = preset_to_config(preset("solar")) + "\n" + \
            preset_to_config(preset("cmb"))
        with pytest.raises(ValueError, match="duplicate"):
            preset_from_config(two_blocks)


class TestScenarioSurvival:
    def test_dispatch_by_channel_type(self):
        atom = atom_for(60)
        t = np.array([0.0, YEAR])
        photon = scenario_survival(atom, preset("cmb").channel, t)
        massive = scenario_survival(atom, preset("axion_dm").channel, t)
        assert photon.flags["channel"] == "photon"
        assert massive.flags["channel"] == "massive"
        with pytest.raises(TypeError):
            scenario_survival(atom, object(), t)

    def test_all_preset_rates_positive_and_deficits_bounded(self):
        atom = atom_for(60)
        t = np.linspace(0.0, 100 * YEAR, 8)
        for name in PRESET_NAMES:
            result = scenario_survival(atom, preset(name).channel, t)
            assert result.rate_direct > 0.0
            assert np.all(result.series.deficit >= 0.0)
            assert np.all(result.series.deficit <= 1.0)

    def test_direct_photon_rate_value(self):
        # frozen regression for the strongest photon environment
        rate = photon_decay_rate(atom_for(60), preset("solar").channel)
        assert rate == pytest.approx(1.5944e-19, rel=1e-4)
