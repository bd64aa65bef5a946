import math
from dataclasses import replace

import numpy as np
import pytest

import fd_backhaul.validate as validation
from fd_backhaul import montecarlo
from fd_backhaul.analytic import LinkTerms, RateReport, se_phase
from fd_backhaul.constants import COMPONENTS
from fd_backhaul.montecarlo import McSettings
from fd_backhaul.params import default_scenario
from fd_backhaul.quantizer import qn_diag
from fd_backhaul.validate import compare_reports, validate


def _terms(value: float = 1.0, **overrides) -> LinkTerms:
    values = {name: overrides.get(name, value) for name in COMPONENTS}

    return LinkTerms(**{name: np.full(1, v, dtype=float) for name, v in values.items()})


def _reports(empirical: LinkTerms, stderr: LinkTerms, analytic: LinkTerms):
    reference = RateReport(phase=1, method="analytic", prelog=0.47, mc=analytic, sc=analytic)
    estimate = RateReport(
        phase=1,
        method="montecarlo",
        prelog=0.47,
        mc=empirical,
        sc=empirical,
        mc_stderr=stderr,
        sc_stderr=stderr,
    )

    return reference, estimate


def _component(rows, name):
    return next(r for r in rows if r["check"] == "component" and r["name"] == name and r["side"] == "mc")


class TestCompareReports:
    def test_component_needs_both_relative_and_z_agreement(self):
        analytic = _terms(desired=10.0, qn=0.0)
        empirical = _terms(desired=10.3, qn=0.0)

        tight = compare_reports(*_reports(empirical, _terms(0.01), analytic), b=2)
        loose = compare_reports(*_reports(empirical, _terms(0.1), analytic), b=2)

        assert _component(tight, "desired")["rel_error"] == pytest.approx(0.03)
        assert not _component(tight, "desired")["passed"]
        assert _component(loose, "desired")["passed"]

    def test_negligible_component_is_judged_on_z_only(self):
        analytic = _terms(desired=10.0, si=0.001, qn=0.0)
        empirical = _terms(desired=10.0, si=0.0012, qn=0.0)

        rows = compare_reports(*_reports(empirical, _terms(0.0001), analytic), b=2)
        si = _component(rows, "si")

        assert si["rel_error"] == pytest.approx(0.2)
        assert si["tolerance"] is None
        assert si["passed"]

    def test_zero_spread_matching_component_passes(self):
        analytic = _terms(qn=0.0)

        rows = compare_reports(*_reports(_terms(qn=0.0), _terms(0.0), analytic), b=math.inf)

        assert all(r["passed"] for r in rows)
        assert _component(rows, "qn")["z"] == 0.0


class TestValidate:
    def test_small_scenario_passes(self):
        report = validate(default_scenario(1, M=64, N=32), McSettings(n_realizations=10_000))
        checks = report.checks

        assert report.passed, report.summary()
        assert report.summary().startswith("PASS")
        assert set(checks["check"]) == {"moment", "component", "sinr", "sum_se"}
        assert set(checks["phase"]) == {1, 2}
        assert set(checks.loc[checks["check"] == "sum_se", "b"]) == {1, 2, math.inf}

    def test_moment_rows_use_standard_errors_only(self):
        report = validate(
            default_scenario(1, M=32, N=16), McSettings(n_realizations=2_000), bits=(math.inf,)
        )
        moments = report.checks[report.checks["check"] == "moment"]
        norm = moments["name"] == "E|h_nk|^2"

        assert moments["tolerance"].isna().all()
        assert (moments.loc[norm, "z_tolerance"] == 3.0).all()
        assert (moments.loc[~norm, "z_tolerance"] == 4.0).all()

    def test_small_bias_in_one_term_is_caught(self, monkeypatch):
        def biased(point, phase, form="exact"):
            report = se_phase(point, phase, form=form)

            return replace(report, mc=replace(report.mc, desired=report.mc.desired * 1.035))

        monkeypatch.setattr(validation, "se_phase", biased)

        report = validate(
            default_scenario(1, M=64, N=32), McSettings(n_realizations=10_000), bits=(2,)
        )
        failed = report.failures
        components = failed[failed["check"] == "component"]

        assert not report.passed
        assert set(components["name"]) == {"desired"}
        assert set(components.loc[components["phase"] == 1, "side"]) == {"mc"}
        assert len(components[components["phase"] == 1]) == 6
        assert (components["rel_error"] < 0.05).all()
        assert report.worst["name"] == "desired"

    def test_corrupted_quantization_noise_is_caught(self, monkeypatch):
        monkeypatch.setattr(montecarlo, "qn_diag", lambda rho, cov: 2 * qn_diag(rho, cov))

        report = validate(
            default_scenario(1, M=32, N=16), McSettings(n_realizations=2_000), bits=(2,)
        )
        worst = report.worst

        assert not report.passed
        assert worst["check"] == "component"
        assert worst["name"] == "qn"
        assert worst["rel_error"] == pytest.approx(1.0, rel=0.1)
        assert report.summary().startswith("FAIL")
        assert "'qn'" in report.summary()

    def test_printed_form_is_flagged(self):
        report = validate(
            default_scenario(1, M=32, N=16), McSettings(n_realizations=2_000), bits=(1,),
            form="printed",
        )

        failed = report.failures
        assert not report.passed
        assert {"qn", "estimation"} & set(failed["name"])

    @pytest.mark.slow
    def test_reference_scenario(self):
        report = validate(default_scenario(1, M=256, N=128), McSettings(n_realizations=10_000))

        assert report.passed, report.summary()
