import numpy as np
import pytest

from fd_backhaul.channel import (
    array_sizes,
    dirichlet_sq,
    draw_realization,
    steering_matrix,
    steering_vector,
)
from fd_backhaul.params import InterferenceProfile, RoleMismatchError, default_scenario


class TestSteering:
    @pytest.mark.parametrize("n", [1, 8, 64])
    def test_norm_equals_antenna_count(self, n):
        a = steering_vector(n, 0.3)

        assert a[0] == 1.0
        assert np.vdot(a, a).real == pytest.approx(n)

    def test_matrix_stacks_vectors(self):
        thetas = np.array([-0.5, 0.1, 1.2])
        A = steering_matrix(16, thetas)

        for k, theta in enumerate(thetas):
            np.testing.assert_allclose(A[:, k], steering_vector(16, theta))

    def test_raises_error_for_empty_array(self):
        with pytest.raises(ValueError):
            steering_vector(0, 0.1)


class TestDirichletSq:
    def test_matches_brute_force_inner_product(self):
        rng = np.random.default_rng(7)
        n = 32
        thetas = rng.uniform(-np.pi / 2, np.pi / 2, size=(100, 2))

        errors = []
        for theta_k, theta_j in thetas:
            brute = abs(np.vdot(steering_vector(n, theta_k), steering_vector(n, theta_j))) ** 2
            errors.append(abs(dirichlet_sq(n, theta_k, theta_j) - brute))

        assert max(errors) < 1e-9

    def test_coincident_angles(self):
        assert dirichlet_sq(20, 0.4, 0.4) == 400.0

    def test_broadcasts(self):
        thetas = np.array([-0.3, 0.2, 0.9])
        phi2 = dirichlet_sq(10, thetas[:, None], thetas[None, :])

        assert phi2.shape == (3, 3)
        np.testing.assert_array_equal(np.diag(phi2), 100.0)
        np.testing.assert_allclose(phi2, phi2.T)


class TestDrawRealization:
    def test_phase1_shapes(self):
        cfg, fading, interf, _ = scenario = default_scenario(1, M=16, N=8)
        real = draw_realization(cfg, fading, scenario.stats, interf, 1, np.random.default_rng(0))

        assert real.H_hat.shape == (16, 6)
        assert real.G_hat.shape == (8, 6)
        assert real.Q.shape == (16, 6)
        assert real.q_s.shape == (8, 6)
        assert real.q_c.shape == (8, 6, 6)
        assert real.z_m is None

    def test_phase2_batched_shapes(self):
        cfg, fading, interf, _ = scenario = default_scenario(2, M=16, N=8)
        real = draw_realization(
            cfg, fading, scenario.stats, interf, 2, np.random.default_rng(0), size=5
        )

        assert array_sizes(cfg, 2) == (16, 8)
        assert real.H_hat.shape == (5, 16, 6)
        assert real.E.shape == (5, 16, 6)
        assert real.G_hat.shape == (5, 8, 6)
        assert real.z_m.shape == (5, 6, 16)
        assert real.z_s.shape == (5, 6, 8)
        assert real.z_c.shape == (5, 6, 6, 8)
        assert real.Q is None

    def test_same_seed_gives_identical_draws(self):
        cfg, fading, interf, _ = scenario = default_scenario(1, M=16, N=8)
        stats = scenario.stats

        a = draw_realization(cfg, fading, stats, interf, 1, np.random.default_rng(11), size=3)
        b = draw_realization(cfg, fading, stats, interf, 1, np.random.default_rng(11), size=3)

        np.testing.assert_array_equal(a.H, b.H)
        np.testing.assert_array_equal(a.q_c, b.q_c)

    def test_zero_variance_links_are_exactly_zero(self):
        cfg, fading, _, _ = scenario = default_scenario(1, M=16, N=8)
        interf = InterferenceProfile.uniform(6).silenced()
        real = draw_realization(cfg, fading, scenario.stats, interf, 1, np.random.default_rng(1))

        assert not np.any(real.Q)
        assert not np.any(real.q_s)
        assert not np.any(real.q_c)

    def test_estimate_power_matches_mmse_statistics(self):
        cfg, fading, interf, _ = scenario = default_scenario(1, M=64, N=8)
        real = draw_realization(
            cfg, fading, scenario.stats, interf, 1, np.random.default_rng(3), size=2000
        )

        # beta (K + eta) / (K + 1) = 0.2 * 1.96 / 2
        np.testing.assert_allclose(np.mean(np.abs(real.H_hat) ** 2, axis=(0, 1)), 0.196, rtol=0.02)
        np.testing.assert_allclose(np.mean(np.abs(real.E) ** 2, axis=(0, 1)), 0.004, rtol=0.02)

    def test_raises_error_for_role_mismatch(self):
        cfg, fading, interf, _ = scenario = default_scenario(1)

        with pytest.raises(RoleMismatchError):
            draw_realization(cfg, fading, scenario.stats, interf, 2, np.random.default_rng(0))
