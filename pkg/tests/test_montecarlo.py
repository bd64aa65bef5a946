import math
from dataclasses import replace

import numpy as np
import pandas as pd
import pytest

from fd_backhaul import montecarlo
from fd_backhaul.montecarlo import (
    McSettings,
    mc_se_phase1,
    mc_se_phase2,
    moment_oracle,
    precoder_power,
    run_batches,
)
from fd_backhaul.params import (
    AdcConfig,
    FadingProfile,
    InterferenceProfile,
    RoleMismatchError,
    Scenario,
    default_scenario,
)


def _run(scenario: Scenario, phase: int, mc: McSettings):
    cfg, fading, interf, adc = scenario
    estimate = mc_se_phase1 if phase == 1 else mc_se_phase2

    return estimate(cfg, fading, scenario.stats, interf, adc, mc)


class TestMcSettings:
    def test_batch_sizes(self):
        assert McSettings(n_realizations=10, batch=4).batch_sizes() == [4, 4, 2]
        assert McSettings(n_realizations=8, batch=4).batch_sizes() == [4, 4]

    @pytest.mark.parametrize(
        "changes", [{"n_realizations": 0}, {"batch": 0}, {"workers": 0}, {"stderr": "bootstrap"}]
    )
    def test_raises_error_for_invalid_values(self, changes):
        with pytest.raises(ValueError):
            McSettings(**changes)


class TestRunBatches:
    def test_mean_and_standard_error(self):
        def kernel(rng, size):
            return {"x": rng.normal(2.0, 3.0, size=size)}

        means, stderrs = run_batches(kernel, McSettings(n_realizations=40_000, batch=5_000))

        assert means["x"] == pytest.approx(2.0, abs=4 * 3.0 / 200)
        assert stderrs["x"] == pytest.approx(3.0 / 200, rel=0.05)

    def test_single_realization_has_infinite_standard_error(self):
        def kernel(rng, size):
            return {"x": np.ones((size, 2))}

        means, stderrs = run_batches(kernel, McSettings(n_realizations=1))

        np.testing.assert_array_equal(means["x"], 1.0)
        assert np.all(np.isinf(stderrs["x"]))

    def test_batch_means_standard_error(self):
        def kernel(rng, size):
            return {"x": rng.normal(2.0, 3.0, size=size)}

        pooled = McSettings(n_realizations=40_000, batch=1_000)
        means, pooled_err = run_batches(kernel, pooled)
        batch_means, batch_err = run_batches(kernel, replace(pooled, stderr="batch_means"))

        assert batch_means["x"] == means["x"]
        assert batch_err["x"] == pytest.approx(pooled_err["x"], rel=0.35)

    def test_batch_means_weight_uneven_batches(self):
        def kernel(rng, size):
            return {"x": np.full(size, float(size))}

        # Batches of 4, 4 and 2 realizations: means 4, 4, 2 around 3.6.
        means, stderrs = run_batches(
            kernel, McSettings(n_realizations=10, batch=4, stderr="batch_means")
        )

        assert means["x"] == pytest.approx(3.6)
        assert stderrs["x"] == pytest.approx(0.48)

    def test_batch_means_fall_back_to_pooled_for_one_batch(self):
        def kernel(rng, size):
            return {"x": rng.normal(size=size)}

        mc = McSettings(n_realizations=50, batch=100)
        _, pooled = run_batches(kernel, mc)
        _, fallback = run_batches(kernel, replace(mc, stderr="batch_means"))

        assert fallback["x"] == pooled["x"]


class TestMcSePhase1:
    def test_results_do_not_depend_on_the_worker_count(self):
        scenario = default_scenario(1, M=16, N=8)
        mc = McSettings(n_realizations=300, batch=50, seed=5)

        serial = _run(scenario, 1, mc).to_frame()
        parallel = _run(scenario, 1, replace(mc, workers=3)).to_frame()

        pd.testing.assert_frame_equal(serial, parallel)

    def test_different_seeds_give_different_estimates(self):
        scenario = default_scenario(1, M=16, N=8)

        a = _run(scenario, 1, McSettings(n_realizations=200, seed=1))
        b = _run(scenario, 1, McSettings(n_realizations=200, seed=2))

        assert a.sum_se_total != b.sum_se_total

    def test_single_link_without_interference(self):
        cfg = replace(default_scenario(1, M=16, N=8).cfg, S=1, M_tx=1, tau_p=2)
        fading = FadingProfile.uniform(1)
        interf = InterferenceProfile.uniform(1).silenced()
        scenario = Scenario(cfg, fading, interf, AdcConfig.uniform(2))

        report = _run(scenario, 1, McSettings(n_realizations=200))

        for side in ("mc", "sc"):
            terms = report.terms(side)
            np.testing.assert_array_equal(terms.ici, 0.0)
            np.testing.assert_array_equal(terms.si, 0.0)
            np.testing.assert_array_equal(terms.sc2sc, 0.0)

    def test_standard_error_shrinks_with_realizations(self):
        scenario = default_scenario(1, M=16, N=8)

        small = _run(scenario, 1, McSettings(n_realizations=400, seed=3))
        large = _run(scenario, 1, McSettings(n_realizations=800, seed=4))

        ratio = (large.mc_stderr.desired / small.mc_stderr.desired) ** 2
        assert 0.35 < np.mean(ratio) < 0.7

    def test_reports_standard_errors(self):
        report = _run(default_scenario(1, M=16, N=8), 1, McSettings(n_realizations=200))
        df = report.to_frame()

        assert report.method == "montecarlo"
        assert {"desired_std", "qn_std", "se_std"} <= set(df.columns)
        assert report.sum_se_stderr() > 0

    def test_warns_on_few_realizations(self, monkeypatch):
        messages = []
        monkeypatch.setattr(montecarlo.logger, "warning", messages.append)

        _run(default_scenario(1, M=16, N=8), 1, McSettings(n_realizations=20))

        assert any("Only 20 realizations" in m for m in messages)

    def test_raises_error_for_role_mismatch(self):
        with pytest.raises(RoleMismatchError):
            _run(default_scenario(2, M=16, N=8), 1, McSettings(n_realizations=10))


class TestMcSePhase2:
    def test_ideal_adcs_have_no_quantization_noise(self):
        scenario = default_scenario(2, M=16, N=8)._replace(adc=AdcConfig.uniform(math.inf))

        report = _run(scenario, 2, McSettings(n_realizations=100))

        np.testing.assert_array_equal(report.mc.qn, 0.0)
        np.testing.assert_array_equal(report.sc.qn, 0.0)

    def test_results_do_not_depend_on_the_worker_count(self):
        scenario = default_scenario(2, M=16, N=8)
        mc = McSettings(n_realizations=300, batch=64)

        serial = _run(scenario, 2, mc)
        parallel = _run(scenario, 2, replace(mc, workers=4))

        assert serial.sum_se_total == parallel.sum_se_total
        np.testing.assert_array_equal(serial.sc.qn, parallel.sc.qn)


class TestPrecoderPower:
    def test_normalization_holds_on_average(self):
        cfg, fading, interf, _ = scenario = default_scenario(2, M=32, N=16)

        df = precoder_power(cfg, fading, scenario.stats, interf, McSettings(n_realizations=10_000))

        assert list(df["target"]) == [6.0] + [1.0] * 6
        assert np.all(np.abs(df["empirical"] - df["target"]) <= 3 * df["std_error"])


class TestMomentOracle:
    @staticmethod
    def _assert_identities_hold(df):
        norm = df["name"] == "E|h_nk|^2"

        assert np.all(np.abs(df.loc[norm, "z"]) <= 3)
        assert np.all(np.abs(df.loc[~norm, "z"]) <= 4)

    def test_reference_second_moment(self):
        cfg, fading, interf, _ = scenario = default_scenario(1, M=32, N=16)

        df = moment_oracle(cfg, fading, scenario.stats, McSettings(n_realizations=2000), interf)
        row = df[df["name"] == "E|h_nk|^2"].iloc[0]

        assert row["analytic"] == pytest.approx(0.196)
        assert row["empirical"] == pytest.approx(0.196, rel=0.02)

    def test_every_identity_holds(self):
        cfg, fading, interf, _ = scenario = default_scenario(2, M=32, N=16)

        df = moment_oracle(cfg, fading, scenario.stats, McSettings(n_realizations=4000), interf)

        assert set(df["name"]) == {
            "E|h_nk|^2",
            "E|h_nk|^4",
            "E|e_nk|^2",
            "E|h_nk q_ni|^2",
            "E||h_k||^4",
            "E|g_nk|^2",
            "E|h_k^H h_j|^2",
        }
        assert len(df[df["name"] == "E|h_k^H h_j|^2"]) == 15
        self._assert_identities_hold(df)

    @pytest.mark.slow
    def test_reference_scenario(self):
        cfg, fading, interf, _ = scenario = default_scenario(1)

        df = moment_oracle(cfg, fading, scenario.stats, McSettings(n_realizations=10_000), interf)

        assert df.loc[df["name"] == "E|h_nk|^2", "analytic"].tolist() == pytest.approx([0.196] * 6)
        self._assert_identities_hold(df)
