import math

import numpy as np
import pytest

from fd_backhaul.params import (
    AdcConfig,
    FadingProfile,
    HeterogeneousKError,
    InterferenceProfile,
    RoleMismatchError,
    SystemConfig,
    default_scenario,
    derive_estimation_stats,
    distortion,
    kappa,
    kappa_table,
    load_scenario,
    resize_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    uniform_aoas,
    with_phase_roles,
    with_power_scaling,
)


def _config(**changes) -> SystemConfig:
    values = dict(
        S=6, M_rx=256, M_tx=6, N_rx=128, N_tx=1, T=200, tau_p=12, p_m=10.0, p_s=10.0, p_tau=10.0
    )
    values.update(changes)

    return SystemConfig(**values)


class TestKappa:
    @pytest.mark.parametrize(
        "b,expected",
        [(1, 0.3634), (2, 0.1175), (3, 0.03454), (4, 0.009497), (5, 0.002499)],
    )
    def test_tabulated_values(self, b, expected):
        assert kappa(b) == expected

    def test_high_resolution_formula(self):
        expected = math.pi * math.sqrt(3) / 2 * 2 ** (-12)

        assert kappa(6) == pytest.approx(expected)
        assert kappa(6.0) == pytest.approx(expected)

    def test_infinite_resolution_is_distortion_free(self):
        assert kappa(math.inf) == 0.0
        assert distortion(math.inf) == 1.0

    def test_distortion_is_one_minus_kappa(self):
        assert distortion(3) == pytest.approx(1 - 0.03454)

    @pytest.mark.parametrize("b", [0, -1, 2.5, "3", True, -math.inf])
    def test_raises_error_for_invalid_resolution(self, b):
        with pytest.raises(ValueError):
            kappa(b)

    def test_kappa_table_is_a_copy(self):
        table = kappa_table()
        table[1] = 0.0

        assert kappa(1) == 0.3634
        assert sorted(kappa_table()) == [1, 2, 3, 4, 5]


class TestSystemConfig:
    def test_tau_d_of_reference_frame(self):
        assert _config().tau_d == pytest.approx(0.47)

    def test_raises_error_if_pilots_are_too_short(self):
        with pytest.raises(ValueError, match="tau_p"):
            _config(tau_p=11)

    def test_raises_error_if_frame_is_not_longer_than_pilots(self):
        with pytest.raises(ValueError, match="Coherence"):
            _config(T=12)

    def test_raises_error_for_nonpositive_power(self):
        with pytest.raises(ValueError, match="p_s"):
            _config(p_s=0.0)

    def test_check_roles(self):
        cfg = _config()
        cfg.check_roles(1)

        assert cfg.roles_ok(1)
        assert not cfg.roles_ok(2)
        with pytest.raises(RoleMismatchError, match="phase 2 requires M_rx == S"):
            cfg.check_roles(2)

    def test_role_mismatch_is_a_value_error(self):
        with pytest.raises(ValueError):
            _config(M_tx=8).check_roles(1)

    def test_raises_error_for_unknown_phase(self):
        with pytest.raises(ValueError, match="phase"):
            _config().check_roles(3)


class TestFadingProfile:
    def test_uniform_aoas_are_evenly_spaced(self):
        aoas = uniform_aoas(6)

        np.testing.assert_allclose(np.diff(aoas), np.pi / 6)
        assert aoas[0] > -np.pi / 2 and aoas[-1] < np.pi / 2

    def test_arrays_are_read_only(self):
        fading = FadingProfile.uniform(3)

        with pytest.raises(ValueError):
            fading.beta[0] = 1.0

    def test_raises_error_for_negative_K(self):
        with pytest.raises(ValueError, match="K-factors"):
            FadingProfile.uniform(3, K=-1.0)

    def test_raises_error_for_angle_outside_half_plane(self):
        fading = FadingProfile.uniform(2)
        with pytest.raises(ValueError, match="aoa_m"):
            FadingProfile(
                beta=fading.beta,
                alpha=fading.alpha,
                K_m=fading.K_m,
                K_s=fading.K_s,
                aoa_m=[0.0, np.pi / 2],
                aoa_s=fading.aoa_s,
                aoa2_m=fading.aoa2_m,
                aoa2_s=fading.aoa2_s,
            )

    def test_raises_error_for_mismatched_lengths(self):
        fading = FadingProfile.uniform(2)
        with pytest.raises(ValueError, match="alpha"):
            FadingProfile(
                beta=fading.beta,
                alpha=[0.2, 0.2, 0.2],
                K_m=fading.K_m,
                K_s=fading.K_s,
                aoa_m=fading.aoa_m,
                aoa_s=fading.aoa_s,
                aoa2_m=fading.aoa2_m,
                aoa2_s=fading.aoa2_s,
            )

    def test_common_K(self):
        assert FadingProfile.uniform(4, K=3.0).common_K() == 3.0
        assert FadingProfile.uniform(4, K=1.0).with_K(5.0).common_K() == 5.0

    def test_common_K_raises_error_for_heterogeneous_links(self):
        fading = FadingProfile.uniform(4, K=1.0, K_s=2.0)

        with pytest.raises(HeterogeneousKError):
            fading.common_K()


class TestInterferenceProfile:
    def test_self_pairs_are_zeroed(self):
        interf = InterferenceProfile.uniform(4)

        np.testing.assert_array_equal(np.diag(interf.sigma2_c), 0.0)
        np.testing.assert_array_equal(np.diag(interf.zeta2_c), 0.0)
        assert interf.sigma2_c[0, 1] == 0.2

    def test_silenced(self):
        interf = InterferenceProfile.uniform(4).silenced()

        assert interf.sigma2_m == 0.0
        for name in ("sigma2_s", "sigma2_c", "zeta2_m", "zeta2_s", "zeta2_c"):
            np.testing.assert_array_equal(getattr(interf, name), 0.0)

    def test_with_strength_only_touches_one_phase(self):
        interf = InterferenceProfile.uniform(3).with_strength(0.7, 1)

        assert interf.sigma2_m == 0.7
        np.testing.assert_array_equal(interf.sigma2_s, 0.7)
        np.testing.assert_array_equal(interf.zeta2_s, 0.3)

    def test_raises_error_for_negative_variance(self):
        with pytest.raises(ValueError, match="sigma2_m"):
            InterferenceProfile.uniform(3, sigma2_m=-0.1)


class TestAdcConfig:
    def test_factors_per_phase(self):
        adc = AdcConfig(1, 2, 3, math.inf)

        assert adc.factors(1) == (1 - 0.3634, 1 - 0.1175)
        assert adc.factors(2) == (1 - 0.03454, 1.0)

    def test_raises_error_for_zero_bits(self):
        with pytest.raises(ValueError):
            AdcConfig.uniform(0)


class TestDeriveEstimationStats:
    def test_reference_values(self):
        scenario = default_scenario()
        stats = scenario.stats

        # tau_p p_tau beta = 12 * 10 * 0.2 = 24
        np.testing.assert_allclose(stats.eta, 0.96)
        np.testing.assert_allclose(stats.xi, 0.1)
        np.testing.assert_allclose(stats.beta_hat, 0.096)
        np.testing.assert_allclose(stats.beta_tilde, 0.004)
        np.testing.assert_allclose(stats.eps, 0.96)

    def test_estimate_and_error_split_the_scattered_power(self):
        stats = default_scenario().stats

        np.testing.assert_allclose(stats.beta_hat + stats.beta_tilde, stats.xi)
        np.testing.assert_allclose(stats.alpha_hat + stats.alpha_tilde, stats.alpha_xi)

    def test_infinite_pilot_power_gives_perfect_estimates(self):
        cfg = _config(p_tau=math.inf)
        stats = derive_estimation_stats(cfg, FadingProfile.uniform(6))

        np.testing.assert_array_equal(stats.eta, 1.0)
        np.testing.assert_array_equal(stats.beta_tilde, 0.0)

    def test_raises_error_for_link_count_mismatch(self):
        with pytest.raises(ValueError, match="links"):
            derive_estimation_stats(_config(), FadingProfile.uniform(4))


class TestPhaseRoles:
    def test_default_scenario_roles(self):
        assert default_scenario(1).cfg.roles_ok(1)
        assert default_scenario(2).cfg.roles_ok(2)

    def test_arrays_switch_roles(self):
        cfg = _config()
        cfg2 = with_phase_roles(cfg, 2)

        assert (cfg2.M_tx, cfg2.N_tx, cfg2.M_rx, cfg2.N_rx) == (256, 128, 6, 1)
        assert with_phase_roles(cfg2, 1) == cfg
        assert with_phase_roles(cfg, 1) is cfg

    def test_power_scaling(self):
        cfg = with_power_scaling(_config(), 10.0, 20.0, 1)

        assert cfg.p_m == pytest.approx(10.0 / 128)
        assert cfg.p_s == pytest.approx(20.0 / 256)
        assert cfg.p_tau == 10.0

        cfg = with_power_scaling(with_phase_roles(_config(), 2), 10.0, 20.0, 2)
        assert cfg.p_m == pytest.approx(10.0 / 256)
        assert cfg.p_s == pytest.approx(20.0 / 128)

    def test_resize_scenario(self):
        scenario = resize_scenario(default_scenario(), 4)

        assert scenario.cfg.S == 4
        assert scenario.cfg.tau_p == 8
        assert scenario.cfg.M_tx == 4
        assert scenario.fading.S == 4
        assert scenario.interf.sigma2_c[0, 1] == 0.2
        assert scenario.cfg.roles_ok(1)


class TestScenarioFiles:
    def test_dB_keys_are_converted(self):
        scenario = scenario_from_dict(
            {"system": {"M_rx": 300, "N_rx": 200, "p_m_db": 20}, "fading": {"K_db": 20}}
        )

        assert scenario.cfg.M_rx == 300
        assert scenario.cfg.p_m == pytest.approx(100.0)
        np.testing.assert_allclose(scenario.fading.K_m, 100.0)
        np.testing.assert_allclose(scenario.fading.K_s, 100.0)

    def test_infinite_bits(self):
        scenario = scenario_from_dict({"adc": {"b": "inf", "b_s2": 4}})

        assert math.isinf(scenario.adc.b_m1)
        assert scenario.adc.b_s2 == 4

    def test_save_then_load_restores_the_scenario(self, tmp_path):
        scenario = default_scenario(2, M=64, N=32)
        scenario = scenario._replace(adc=AdcConfig(1, 2, 3, math.inf))
        path = tmp_path / "scenario.yml"

        save_scenario(scenario, path)
        loaded = load_scenario(path)

        assert scenario_to_dict(loaded) == scenario_to_dict(scenario)
        assert loaded.cfg == scenario.cfg
