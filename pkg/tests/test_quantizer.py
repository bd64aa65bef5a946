import numpy as np
import pytest

from fd_backhaul.params import distortion
from fd_backhaul.quantizer import qn_diag, quantize
from fd_backhaul.utils import complex_normal


class TestQnDiag:
    def test_covariance_identity(self):
        rho = distortion(2)
        cov = np.array([1.0, 2.5, 0.0])

        np.testing.assert_allclose(qn_diag(rho, cov), rho * (1 - rho) * cov)

    def test_ideal_quantizer_adds_no_noise(self):
        np.testing.assert_array_equal(qn_diag(1.0, [3.0, 4.0]), 0.0)

    @pytest.mark.parametrize("rho", [0.0, -0.2, 1.5])
    def test_raises_error_for_invalid_rho(self, rho):
        with pytest.raises(ValueError, match="rho"):
            qn_diag(rho, [1.0])

    def test_raises_error_for_negative_covariance(self):
        with pytest.raises(ValueError):
            qn_diag(0.9, [1.0, -0.1])


class TestQuantize:
    def test_noise_covariance_matches_qn_diag(self):
        rng = np.random.default_rng(2020)
        rho = distortion(1)
        cov = np.array([0.5, 1.0, 4.0])
        y = complex_normal(rng, (100_000, 3), cov)

        out = quantize(y, rho, cov, rng)
        power = np.abs(out.y_q - rho * y) ** 2
        std_error = power.std(axis=0, ddof=1) / np.sqrt(len(power))

        np.testing.assert_array_equal(out.qn_covariance, qn_diag(rho, cov))
        assert np.all(np.abs(power.mean(axis=0) - qn_diag(rho, cov)) <= 3 * std_error)

    def test_output_power_and_independence(self):
        rng = np.random.default_rng(2020)
        rho = distortion(1)
        cov = np.array([0.5, 1.0, 4.0])
        y = complex_normal(rng, (200_000, 3), cov)

        out = quantize(y, rho, cov, rng)
        n_q = out.y_q - rho * y

        # E|y_q|^2 = rho^2 c + rho (1 - rho) c = rho c
        np.testing.assert_allclose(np.mean(np.abs(out.y_q) ** 2, axis=0), rho * cov, rtol=0.02)
        correlation = np.abs(np.mean(np.conj(y) * n_q, axis=0)) / np.sqrt(cov * out.qn_covariance)
        assert np.all(correlation < 0.02)

    def test_ideal_quantizer_is_transparent(self):
        rng = np.random.default_rng(0)
        y = complex_normal(rng, (4,), 1.0)

        np.testing.assert_array_equal(quantize(y, 1.0, np.ones(4), rng).y_q, y)

    def test_raises_error_for_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            quantize(np.ones((5, 3)), 0.9, np.ones(4), np.random.default_rng(0))
