"""Unit tests for the reduced CVM enthalpy, entropy and free energy."""

import math

import numpy as np
import pytest

from cvmfe.lattice.config_vars import ConfigVars, count_config_vars
from cvmfe.lattice.grid import from_text, new_random
from cvmfe.thermo.cvm_free_energy import (
    CvmDomainError,
    enthalpy_cvm,
    enthalpy_terms,
    entropy_cvm,
    entropy_terms,
    eps_from_h,
    free_energy_cvm,
    grid_eps_from_h,
    grid_h_from_eps,
    h_from_eps,
)


def _lf(v):
    return v * math.log(v) if v > 0 else 0.0


def _entropy_by_hand(cv):
    return (
        2 * (_lf(cv.y[0]) + 2 * _lf(cv.y[1]) + _lf(cv.y[2]))
        + (_lf(cv.w[0]) + 2 * _lf(cv.w[1]) + _lf(cv.w[2]))
        - (_lf(cv.x[0]) + _lf(cv.x[1]))
        - 2
        * (
            _lf(cv.z[0])
            + 2 * _lf(cv.z[1])
            + _lf(cv.z[2])
            + _lf(cv.z[3])
            + 2 * _lf(cv.z[4])
            + _lf(cv.z[5])
        )
    )


class TestEnthalpy:
    """Test the interaction enthalpy."""

    def test_zero_interaction(self, random_grid):
        assert enthalpy_cvm(count_config_vars(random_grid), 0.0) == 0.0

    def test_all_a(self, all_a_grid):
        assert enthalpy_cvm(count_config_vars(all_a_grid), 0.1) == pytest.approx(-0.1)

    def test_equiprobable(self):
        assert enthalpy_cvm(ConfigVars.equiprobable(), 0.7) == pytest.approx(0.0, abs=1e-15)

    def test_batch_axes(self):
        z = np.array([[1.0, 0, 0, 0, 0, 0], [0, 0, 0.5, 0.5, 0, 0]])

        assert np.allclose(enthalpy_terms(z, 0.2), [-0.2, 0.2])


class TestEntropy:
    """Test the CVM entropy."""

    def test_uniform_grid(self, all_a_grid):
        assert entropy_cvm(count_config_vars(all_a_grid)) == 0.0

    def test_equiprobable_is_ln2(self):
        assert entropy_cvm(ConfigVars.equiprobable()) == pytest.approx(math.log(2), abs=1e-12)

    def test_striped_grid_matches_hand_evaluation(self, striped_grid):
        cv = count_config_vars(striped_grid)

        assert entropy_cvm(cv) == pytest.approx(_entropy_by_hand(cv), abs=1e-12)
        assert entropy_cvm(cv) == pytest.approx(0.0, abs=1e-12)

    def test_column_stripes_are_negative(self):
        """The approximation is not bounded below by zero on every ordered grid."""
        cv = count_config_vars(from_text("1010\n1010\n1010\n1010\n"))

        assert entropy_cvm(cv) == pytest.approx(-math.log(2), abs=1e-12)

    def test_random_grids_are_positive(self):
        for seed in range(10):
            cv = count_config_vars(new_random(16, 16, seed=seed))
            assert entropy_cvm(cv) > 0.0
            assert entropy_cvm(cv) == pytest.approx(_entropy_by_hand(cv), abs=1e-12)

    def test_out_of_range_rejected(self):
        cv = ConfigVars(x=(1.2, -0.2), y=(0.25,) * 3, w=(0.25,) * 3, z=(0.125,) * 6)

        with pytest.raises(CvmDomainError):
            entropy_cvm(cv)

    def test_rounding_noise_tolerated(self):
        cv = ConfigVars(
            x=(0.5, 0.5), y=(0.25,) * 3, w=(0.25,) * 3, z=(0.125,) * 5 + (-1e-14,)
        )

        assert math.isfinite(entropy_cvm(cv))

    def test_batch_axes(self):
        eq = ConfigVars.equiprobable()
        x = np.array([eq.x, [1.0, 0.0]])
        y = np.array([eq.y, [1.0, 0.0, 0.0]])
        w = np.array([eq.w, [1.0, 0.0, 0.0]])
        z = np.array([eq.z, [1.0, 0, 0, 0, 0, 0]])

        assert np.allclose(entropy_terms(x, y, w, z), [math.log(2), 0.0])


class TestFreeEnergy:
    """Test F = H - S."""

    def test_equiprobable(self):
        report = free_energy_cvm(ConfigVars.equiprobable(), 0.0)

        assert report.free_energy == pytest.approx(-math.log(2), abs=1e-10)
        assert report.h == 1.0

    def test_all_a(self, all_a_grid):
        report = free_energy_cvm(count_config_vars(all_a_grid), 0.1)

        assert report.free_energy == pytest.approx(-0.1)
        assert report.entropy == 0.0

    def test_zero_interaction_is_minus_entropy(self, random_grid):
        cv = count_config_vars(random_grid)

        assert free_energy_cvm(cv, 0.0).free_energy == -entropy_cvm(cv)

    def test_identity_on_random_profiles(self):
        rng = np.random.default_rng(3)
        for seed in range(20):
            cv = count_config_vars(new_random(8, 8, seed=seed))
            eps1 = float(rng.uniform(-1, 1))
            report = free_energy_cvm(cv, eps1)
            assert report.free_energy == pytest.approx(
                report.enthalpy - report.entropy, abs=1e-12
            )

    def test_report_dict(self):
        data = free_energy_cvm(ConfigVars.equiprobable(), 0.5).to_dict()

        assert set(data) == {"enthalpy", "entropy", "free_energy", "eps1", "h"}


class TestHConversion:
    """Test h = exp(2 eps1)."""

    def test_zero(self):
        assert h_from_eps(0.0) == 1.0
        assert eps_from_h(1.0) == 0.0

    def test_h12(self):
        assert eps_from_h(1.2) == pytest.approx(0.091161, abs=1e-6)
        assert h_from_eps(eps_from_h(1.2)) == pytest.approx(1.2, abs=1e-15)

    @pytest.mark.parametrize("h", [0.0, -1.0])
    def test_non_positive_rejected(self, h):
        with pytest.raises(CvmDomainError):
            eps_from_h(h)


class TestGridInteraction:
    """Test the interaction that relaxes a grid onto the profile of h."""

    def test_h12(self):
        assert grid_eps_from_h(1.2) == pytest.approx(math.log(1.2), abs=1e-15)
        assert grid_eps_from_h(1.2) == pytest.approx(2.0 * eps_from_h(1.2), abs=1e-15)

    def test_inverse(self):
        assert grid_h_from_eps(grid_eps_from_h(1.35)) == pytest.approx(1.35, abs=1e-14)
        assert grid_h_from_eps(0.0) == 1.0

    def test_non_positive_rejected(self):
        with pytest.raises(CvmDomainError):
            grid_eps_from_h(0.0)
