"""Validate module for checking the closed forms against Monte Carlo."""
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

import pandas as pd

from fd_backhaul.analytic import RateReport, se_phase
from fd_backhaul.constants import COMPONENTS, Form, Phase
from fd_backhaul.logger import setup_custom_logger
from fd_backhaul.montecarlo import McSettings, mc_se_phase1, mc_se_phase2, moment_oracle
from fd_backhaul.params import AdcConfig, Bits, Scenario, default_scenario
from fd_backhaul.settings import MC_VALIDATE_REALIZATIONS

logger = setup_custom_logger(__name__)

# Relative tolerances of the analytic vs Monte Carlo comparisons.
COMPONENT_TOLERANCE = 0.05
SINR_TOLERANCE = 0.05
SUM_SE_TOLERANCE = 0.02
# Discrepancy limits in standard errors.
Z_TOLERANCE = 4.0
NORM_Z_TOLERANCE = 3.0
# Components below this share of their link's interference are checked on z only.
NEGLIGIBLE_SHARE = 1e-3
# The per-entry second moment is the norm identity E||h_k||^2 / M.
NORM_MOMENT = "E|h_nk|^2"


@dataclass
class ValidationReport:
    """Outcome of every comparison, one row each.

    Columns: ``check``, ``phase``, ``b``, ``side``, ``name``, ``link``,
    ``analytic``, ``empirical``, ``std_error``, ``rel_error``, ``z``,
    ``tolerance``, ``z_tolerance``, ``score`` and ``passed``. ``score`` is the
    larger of the relative error over ``tolerance`` and ``|z|`` over
    ``z_tolerance`` (whichever apply to the check); a check fails when it
    exceeds 1.
    """

    checks: pd.DataFrame

    @property
    def passed(self) -> bool:
        return bool(self.checks["passed"].all())

    @property
    def failures(self) -> pd.DataFrame:
        return self.checks[~self.checks["passed"]]

    @property
    def worst(self) -> pd.Series:
        """The failed check with the largest score, or the largest score overall."""
        pool = self.failures if not self.passed else self.checks

        return pool.loc[pool["score"].idxmax()]

    def summary(self) -> str:
        worst = self.worst
        verdict = "PASS" if self.passed else "FAIL"

        return (
            f"{verdict}: {len(self.checks) - len(self.failures)}/{len(self.checks)} checks "
            f"passed; worst offender {worst['check']} '{worst['name']}' "
            f"(phase {worst['phase']}, b={worst['b']}, side {worst['side']}, "
            f"link {worst['link']}) with relative error {worst['rel_error']:.2%} "
            f"and z={worst['z']:.2f}."
        )


def _relative(analytic: float, empirical: float) -> float:
    if analytic == empirical:
        return 0.0
    if analytic == 0:
        return math.inf

    return abs(empirical - analytic) / abs(analytic)


def _row(
    check: str,
    phase: Phase,
    b: Bits,
    side: str,
    name: str,
    link: str,
    analytic: float,
    empirical: float,
    std_error: float,
    tolerance: Optional[float],
    z_tolerance: Optional[float],
) -> Dict[str, object]:
    """One comparison; a ``None`` tolerance skips that test."""
    rel = _relative(analytic, empirical)
    diff = empirical - analytic
    if math.isnan(std_error):
        z = math.nan
    elif math.isclose(empirical, analytic, rel_tol=1e-12, abs_tol=1e-15):
        z = 0.0
    elif std_error > 0:
        z = diff / std_error
    else:
        z = math.inf

    scores = []
    if tolerance is not None:
        scores.append(rel / tolerance)
    if z_tolerance is not None and not math.isnan(z):
        scores.append(abs(z) / z_tolerance)
    score = max(scores) if scores else 0.0

    return {
        "check": check,
        "phase": phase,
        "b": b,
        "side": side,
        "name": name,
        "link": link,
        "analytic": analytic,
        "empirical": empirical,
        "std_error": std_error,
        "rel_error": rel,
        "z": z,
        "tolerance": tolerance,
        "z_tolerance": z_tolerance,
        "score": score,
        "passed": bool(score <= 1.0),
    }


def compare_reports(analytic: RateReport, empirical: RateReport, b: Bits) -> List[Dict[str, object]]:
    """Compares an analytic and a Monte Carlo report of the same scenario.

    Every SINR component of every link must agree within 5% relative error
    AND within 4 standard errors. A component below ``NEGLIGIBLE_SHARE`` of
    its link's analytic interference is held to the 4 standard errors alone.
    Every SINR must agree within 5% and each side's sum SE within 2%.
    """
    phase = analytic.phase
    rows = []

    for side in ("mc", "sc"):
        a_terms, e_terms = analytic.terms(side), empirical.terms(side)
        errors = empirical.stderr(side)
        floor = NEGLIGIBLE_SHARE * a_terms.interference

        for name in COMPONENTS:
            a_values, e_values = getattr(a_terms, name), getattr(e_terms, name)
            std = getattr(errors, name)
            for k in range(a_values.size):
                negligible = abs(a_values[k]) < floor[k]
                rows.append(
                    _row("component", phase, b, side, name, str(k + 1), float(a_values[k]),
                         float(e_values[k]), float(std[k]),
                         None if negligible else COMPONENT_TOLERANCE, Z_TOLERANCE)
                )

        for k in range(a_terms.desired.size):
            rows.append(
                _row("sinr", phase, b, side, "sinr", str(k + 1), float(a_terms.sinr[k]),
                     float(e_terms.sinr[k]), math.nan, SINR_TOLERANCE, None)
            )

        a_sum = analytic.sum_se_mc if side == "mc" else analytic.sum_se_sc
        e_sum = empirical.sum_se_mc if side == "mc" else empirical.sum_se_sc
        rows.append(
            _row("sum_se", phase, b, side, "sum_se", "all", a_sum, e_sum,
                 float(empirical.sum_se_stderr(side)), SUM_SE_TOLERANCE, None)
        )

    return rows


def validate(
    scenario: Optional[Scenario] = None,
    mc: Optional[McSettings] = None,
    bits: Iterable[Bits] = (1, 2, math.inf),
    form: Form = "exact",
) -> ValidationReport:
    """Runs the moment oracle and the analytic vs Monte Carlo comparisons.

    Parameters
    ----------
    scenario : Optional[Scenario]
        Scenario to check in both phases (the arrays switch roles for
        phase 2); defaults to ``default_scenario()`` with M=256, N=128.
    mc : Optional[McSettings]
        Monte Carlo settings; defaults to ``MC_VALIDATE_REALIZATIONS``
        realizations.
    bits : Iterable[Bits]
        ADC resolutions to check; every receiver uses the same value.
    form : Form
        Closed-form variant compared against Monte Carlo.

    Returns
    -------
    ValidationReport
        Every comparison with its verdict.
    """
    scenario = default_scenario() if scenario is None else scenario
    mc = McSettings(n_realizations=MC_VALIDATE_REALIZATIONS) if mc is None else mc
    rows: List[Dict[str, object]] = []

    cfg1 = scenario.for_phase(1)
    moments = moment_oracle(cfg1.cfg, cfg1.fading, cfg1.stats, mc, cfg1.interf)
    for m in moments.itertuples(index=False):
        z_limit = NORM_Z_TOLERANCE if m.name == NORM_MOMENT else Z_TOLERANCE
        rows.append(
            _row("moment", 1, "-", "mc", m.name, m.link, m.analytic, m.empirical,
                 m.std_error, None, z_limit)
        )

    for phase in (1, 2):
        point = scenario.for_phase(phase)
        cfg, fading, interf, _ = point
        stats = point.stats
        evaluate = mc_se_phase1 if phase == 1 else mc_se_phase2

        for b in bits:
            adc = AdcConfig.uniform(b)
            analytic = se_phase(point._replace(adc=adc), phase, form=form)
            empirical = evaluate(cfg, fading, stats, interf, adc, mc=mc)
            rows += compare_reports(analytic, empirical, b)
            logger.debug(
                f"Phase {phase}, b={b}: analytic sum SE {analytic.sum_se_total:.4f}, "
                f"Monte Carlo {empirical.sum_se_total:.4f}"
            )

    checks = pd.DataFrame(rows)
    checks["score"] = checks["score"].fillna(0.0)
    report = ValidationReport(checks)

    if report.passed:
        logger.info(report.summary())
    else:
        logger.error(report.summary())

    return report
