"""Energy module for the receiver power model and energy efficiency (EE).

Only receive chains are counted: every receive antenna carries an LNA, an RF
chain and two ADCs (I and Q), and every BS site adds a baseband block.
Transmit powers are ignored. ``EE = B_w * sum_se / power_total`` in bits/J.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from fd_backhaul.analytic import se_phase1, se_phase2
from fd_backhaul.constants import Form, Phase
from fd_backhaul.logger import setup_custom_logger
from fd_backhaul.montecarlo import McSettings, mc_se_phase1, mc_se_phase2
from fd_backhaul.params import (
    AdcConfig,
    Bits,
    EstimationStats,
    FadingProfile,
    InterferenceProfile,
    Scenario,
    SystemConfig,
)

logger = setup_custom_logger(__name__)

SE_SOURCES = ("analytic", "montecarlo")


@dataclass(frozen=True)
class PowerModel:
    """Generic receiver power consumption model.

    Attributes
    ----------
    P_LNA, P_RFC, P_BB : float
        Low-noise amplifier, RF chain and baseband powers (W).
    FOM_W : float
        Walden figure of merit (J per conversion step).
    B_w : float
        Bandwidth (Hz).
    f_s : Optional[float]
        ADC sampling rate (Hz); defaults to the Nyquist rate ``2 B_w``.
    """

    P_LNA: float = 5.4e-3
    P_RFC: float = 40e-3
    P_BB: float = 200e-3
    FOM_W: float = 15e-15
    B_w: float = 1e9
    f_s: Optional[float] = None

    def __post_init__(self):
        if self.f_s is None:
            object.__setattr__(self, "f_s", 2.0 * self.B_w)

        for name in ("P_LNA", "P_RFC", "P_BB", "FOM_W", "B_w", "f_s"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"PowerModel.{name} must be > 0, got {value}.")

    def with_fom(self, FOM_W: float) -> "PowerModel":
        return replace(self, FOM_W=FOM_W)


# ADC classes by figure of merit.
LP_ADC = PowerModel(FOM_W=5e-15)
IP_ADC = PowerModel(FOM_W=65e-15)
HP_ADC = PowerModel(FOM_W=494e-15)


def p_adc(b: Bits, model: PowerModel) -> float:
    """Power of one ADC, ``FOM_W * f_s * 2 ** b``.

    Raises
    ------
    ValueError
        If ``b`` is infinite or below one bit.
    """
    if math.isinf(b):
        raise ValueError("ADC power is undefined for infinite resolution.")
    if b < 1 or not float(b).is_integer():
        raise ValueError(f"ADC resolution must be a positive integer, got {b}.")

    return model.FOM_W * model.f_s * 2.0 ** int(b)


def total_power(
    phase: Phase, cfg: SystemConfig, b: Bits, model: PowerModel
) -> Dict[str, float]:
    """Receive-side power consumption per site.

    In phase 1 the MC BS runs ``M_rx`` receive chains and every SC BS
    ``N_rx``; in phase 2 they run ``S`` and one.

    Returns
    -------
    Dict[str, float]
        ``{"mc": W, "sc_1": W, ..., "sc_S": W}``.
    """
    cfg.check_roles(phase)
    chain = model.P_LNA + model.P_RFC + 2.0 * p_adc(b, model)

    breakdown = {"mc": cfg.M_rx * chain + model.P_BB}
    for k in range(1, cfg.S + 1):
        breakdown[f"sc_{k}"] = cfg.N_rx * chain + model.P_BB

    return breakdown


@dataclass(frozen=True)
class EEReport:
    phase: Phase
    bits: Bits
    sum_se: float
    # NaN for infinite resolution, where the EE is undefined.
    power_total: float
    ee: float
    breakdown: Dict[str, float] = field(default_factory=dict)
    se_source: str = "analytic"

    def as_row(self) -> Dict[str, float]:
        return {
            "b": self.bits,
            "sum_se": self.sum_se,
            "power_total": self.power_total,
            "ee": self.ee,
        }


def ee(
    phase: Phase,
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    b: Bits,
    model: PowerModel,
    se_source: str = "analytic",
    mc: Optional[McSettings] = None,
    form: Form = "exact",
) -> EEReport:
    """Energy efficiency of ``phase`` with ``b``-bit ADCs at every receiver.

    Parameters
    ----------
    phase : Phase
        Which phase; ``cfg`` must carry its roles.
    cfg, fading, stats, interf
        The scenario and its estimation statistics.
    b : Bits
        ADC resolution applied to the MC and SC receivers of ``phase``.
    model : PowerModel
        Power consumption model.
    se_source : str, optional
        "analytic" (closed form) or "montecarlo".
    mc : Optional[McSettings]
        Monte Carlo settings when ``se_source == "montecarlo"``.
    form : Form, optional
        Closed-form variant for the analytic source.

    Returns
    -------
    EEReport
        ``ee * power_total == B_w * sum_se``. For ``b = inf`` only the SE is
        defined and ``power_total`` and ``ee`` are NaN.
    """
    if se_source not in SE_SOURCES:
        raise ValueError(f"se_source must be one of {SE_SOURCES}, got {se_source!r}.")

    adc = AdcConfig.uniform(b)
    if se_source == "analytic":
        evaluate = se_phase1 if phase == 1 else se_phase2
        report = evaluate(cfg, fading, stats, interf, adc, form=form)
    else:
        evaluate = mc_se_phase1 if phase == 1 else mc_se_phase2
        report = evaluate(cfg, fading, stats, interf, adc, mc=mc)

    sum_se = report.sum_se_total

    if math.isinf(b):
        return EEReport(phase, b, sum_se, math.nan, math.nan, {}, se_source)

    breakdown = total_power(phase, cfg, b, model)
    power = float(sum(breakdown.values()))

    return EEReport(phase, b, sum_se, power, model.B_w * sum_se / power, breakdown, se_source)


def _check_b_range(b_range: Iterable[int]) -> List[int]:
    bits = [int(b) for b in b_range]
    if not bits:
        raise ValueError("b_range must contain at least one resolution.")

    return bits


def ee_reports(
    phase: Phase,
    scenario: Scenario,
    model: PowerModel,
    b_range: Iterable[int],
    se_source: str = "analytic",
    mc: Optional[McSettings] = None,
    form: Form = "exact",
    workers: int = 1,
) -> List[EEReport]:
    """Evaluates ``ee`` for every resolution in ``b_range``, in b-order."""
    bits = _check_b_range(b_range)
    cfg, fading, interf, _ = scenario
    stats = scenario.stats

    def work(b: int) -> EEReport:
        return ee(phase, cfg, fading, stats, interf, b, model, se_source, mc, form)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(work, bits))

    for report in reports:
        logger.debug(f"b={report.bits}: sum SE {report.sum_se:.4f}, EE {report.ee:.4e}")

    return reports


def ee_curve(
    phase: Phase,
    scenario: Scenario,
    model: PowerModel,
    b_range: Iterable[int],
    se_source: str = "analytic",
    mc: Optional[McSettings] = None,
    form: Form = "exact",
    workers: int = 1,
) -> pd.DataFrame:
    """Table of ``b``, ``sum_se``, ``power_total`` and ``ee`` over ``b_range``."""
    reports = ee_reports(phase, scenario, model, b_range, se_source, mc, form, workers)

    return pd.DataFrame([r.as_row() for r in reports])


def optimal_bits(
    phase: Phase,
    scenario: Scenario,
    model: PowerModel,
    b_range: Iterable[int],
    se_source: str = "analytic",
    mc: Optional[McSettings] = None,
    form: Form = "exact",
) -> Tuple[int, EEReport]:
    """EE-maximizing ADC resolution, by exhaustive scan of ``b_range``.

    Ties resolve to the smaller resolution.

    Raises
    ------
    ValueError
        If ``b_range`` is empty.
    """
    reports = ee_reports(phase, scenario, model, b_range, se_source, mc, form)
    reports = sorted(reports, key=lambda r: r.bits)
    values = np.array([r.ee for r in reports])
    best = reports[int(np.argmax(values))]

    logger.info(
        f"Phase {phase}: EE-optimal resolution is {best.bits} bits "
        f"(EE {best.ee:.4e} bit/J, FOM_W {model.FOM_W:.3g} J)."
    )

    return int(best.bits), best


def ee_se_frontier(
    phase: Phase,
    scenario: Scenario,
    model: PowerModel,
    b_range: Iterable[int],
    se_source: str = "analytic",
    mc: Optional[McSettings] = None,
    form: Form = "exact",
    workers: int = 1,
) -> List[Tuple[int, float, float]]:
    """EE/SE trade-off traced by the ADC resolution.

    Points are evaluated in parallel and returned in b-order as
    ``(b, sum_se, ee)``.
    """
    bits = sorted(_check_b_range(b_range))
    reports = ee_reports(phase, scenario, model, bits, se_source, mc, form, workers)

    return [(int(r.bits), r.sum_se, r.ee) for r in reports]
