"""Analytic module for the closed-form spectral efficiency (SE) of both phases.

Every SINR is reported through its additive components, in absolute power
units of the combiner/precoder output::

    SINR = desired / (ici + estimation + si + sc2sc + noise + qn)
    SE   = prelog * log2(1 + SINR)

Phase 1 uses MRC at the massive receive arrays, phase 2 uses MRT at the
massive transmit arrays with single-antenna receivers. ``form="exact"``
evaluates every channel-averaged term exactly, which is what the Monte Carlo
engine estimates. ``form="printed"`` keeps the legacy closed forms
verbatim; the two differ in the phase-1 QN cross term, the phase-1 SC desired
power, the phase-2 estimation-error terms and the phase-1 K-limit QN term.
"""
import math
from dataclasses import dataclass, fields, replace
from typing import Dict, Iterable, Optional

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from fd_backhaul.channel import dirichlet_sq
from fd_backhaul.constants import COMPONENTS, FORMS, Form, Method, Phase, Side
from fd_backhaul.logger import setup_custom_logger
from fd_backhaul.params import (
    AdcConfig,
    EstimationStats,
    FadingProfile,
    InterferenceProfile,
    Scenario,
    SystemConfig,
)

logger = setup_custom_logger(__name__)


@dataclass(frozen=True, eq=False)
class LinkTerms:
    """SINR components of the S links on one side, each an array of shape (S,)."""

    desired: np.ndarray
    ici: np.ndarray
    estimation: np.ndarray
    si: np.ndarray
    sc2sc: np.ndarray
    noise: np.ndarray
    qn: np.ndarray

    def __post_init__(self):
        shape = np.shape(self.desired)
        for f in fields(self):
            value = np.broadcast_to(np.asarray(getattr(self, f.name), dtype=float), shape)
            object.__setattr__(self, f.name, value)

    @property
    def interference(self) -> np.ndarray:
        """Sum of every denominator component."""
        return self.ici + self.estimation + self.si + self.sc2sc + self.noise + self.qn

    @property
    def sinr(self) -> np.ndarray:
        return self.desired / self.interference

    def as_dict(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in COMPONENTS}


@dataclass(frozen=True, eq=False)
class RateReport:
    """Per-link and aggregated SE of one phase.

    ``mc`` holds the links received at the MC BS (UL from SC-k in phase 1, MC
    receive antenna k in phase 2) and ``sc`` the DL links received at SC-k.
    ``prelog`` is ``tau_d`` (``tau_d / 2`` for the half-duplex baseline).
    Limit reports share one arbitrary scale factor across the components of a
    link; only their ratios are meaningful.
    """

    phase: Phase
    method: Method
    prelog: float
    mc: LinkTerms
    sc: LinkTerms
    mc_stderr: Optional[LinkTerms] = None
    sc_stderr: Optional[LinkTerms] = None
    label: str = "fd"

    def terms(self, side: Side) -> LinkTerms:
        return self.mc if side == "mc" else self.sc

    def stderr(self, side: Side) -> Optional[LinkTerms]:
        return self.mc_stderr if side == "mc" else self.sc_stderr

    @property
    def sinr_mc(self) -> np.ndarray:
        return self.mc.sinr

    @property
    def sinr_sc(self) -> np.ndarray:
        return self.sc.sinr

    @property
    def se_mc_per_link(self) -> np.ndarray:
        return self.prelog * np.log2(1.0 + self.mc.sinr)

    @property
    def se_sc_per_link(self) -> np.ndarray:
        return self.prelog * np.log2(1.0 + self.sc.sinr)

    @property
    def sum_se_mc(self) -> float:
        return float(np.sum(self.se_mc_per_link))

    @property
    def sum_se_sc(self) -> float:
        return float(np.sum(self.se_sc_per_link))

    @property
    def sum_se_total(self) -> float:
        return self.sum_se_mc + self.sum_se_sc

    def se_stderr(self, side: Side) -> Optional[np.ndarray]:
        """Delta-method standard error of the per-link SE (Monte Carlo only).

        Component estimates are treated as uncorrelated.
        """
        err = self.stderr(side)
        if err is None:
            return None

        terms = self.terms(side)
        A = terms.desired
        B = terms.interference
        var_B = sum(getattr(err, name) ** 2 for name in COMPONENTS if name != "desired")
        d_A = self.prelog / ((A + B) * math.log(2))
        d_B = -self.prelog * A / (B * (A + B) * math.log(2))

        return np.sqrt(d_A**2 * err.desired**2 + d_B**2 * var_B)

    def sum_se_stderr(self, side: Optional[Side] = None) -> Optional[float]:
        """Standard error of a side's sum SE, or of the total when ``side`` is None."""
        sides = ("mc", "sc") if side is None else (side,)
        errors = [self.se_stderr(s) for s in sides]
        if any(e is None for e in errors):
            return None

        return float(np.sqrt(sum(np.sum(e**2) for e in errors)))

    def to_frame(self) -> pd.DataFrame:
        """One row per (side, link) with every component, the SINR and the SE."""
        rows = []
        for side in ("mc", "sc"):
            terms = self.terms(side)
            err = self.stderr(side)
            se = self.se_mc_per_link if side == "mc" else self.se_sc_per_link
            se_err = self.se_stderr(side)

            for k in range(terms.desired.size):
                row = {
                    "phase": self.phase,
                    "method": self.method,
                    "label": self.label,
                    "side": side,
                    "link": k + 1,
                }
                for name, value in terms.as_dict().items():
                    row[name] = float(value[k])
                    if err is not None:
                        row[f"{name}_std"] = float(getattr(err, name)[k])
                row["sinr"] = float(terms.sinr[k])
                row["se"] = float(se[k])
                if se_err is not None:
                    row["se_std"] = float(se_err[k])
                rows.append(row)

        return pd.DataFrame(rows)


def _check_form(form: str):
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}.")


# Channel moments
# ===============
def second_moment(n: int, gain: np.ndarray, K: np.ndarray, quality: np.ndarray) -> np.ndarray:
    """``E||h_k||^2 = n gain (K + q) / (K + 1)`` of an estimated Rician link."""
    return n * gain * (K + quality) / (K + 1.0)


def fourth_moment(n: int, gain: np.ndarray, K: np.ndarray, quality: np.ndarray) -> np.ndarray:
    """``E||h_k||^4 = gain^2 n [n K^2 + q (1 + n)(2K + q)] / (K + 1)^2``."""
    return gain**2 * n * (n * K**2 + quality * (1 + n) * (2 * K + quality)) / (K + 1.0) ** 2


def entry_fourth_moment(gain: np.ndarray, K: np.ndarray, quality: np.ndarray) -> np.ndarray:
    """``E|h_nk|^4 = gain^2 (K^2 + 4 K q + 2 q^2) / (K + 1)^2``."""
    return gain**2 * (K**2 + 4 * K * quality + 2 * quality**2) / (K + 1.0) ** 2


def cross_moments(
    n: int,
    gain: np.ndarray,
    K: np.ndarray,
    quality: np.ndarray,
    thetas: np.ndarray,
) -> np.ndarray:
    """Matrix of ``E|h_k^H h_j|^2`` for k != j (zero diagonal).

    ``gain_k gain_j [K_k K_j phi_kj^2 + n (K_k q_j + K_j q_k + q_k q_j)]
    / ((K_k + 1)(K_j + 1))`` with ``phi_kj^2 = dirichlet_sq(n, theta_k, theta_j)``.
    """
    phi2 = dirichlet_sq(n, thetas[:, None], thetas[None, :])
    Kk, Kj = K[:, None], K[None, :]
    qk, qj = quality[:, None], quality[None, :]
    delta = Kk * Kj * phi2 + n * (Kk * qj + Kj * qk + qk * qj)
    moments = gain[:, None] * gain[None, :] * delta / ((Kk + 1.0) * (Kj + 1.0))
    np.fill_diagonal(moments, 0.0)

    return moments


def precoder_scale_mc(
    M_tx: int, S: int, beta: np.ndarray, K_m: np.ndarray, eta: np.ndarray
) -> float:
    """``mu_m^2 = S / (M_tx sum_j beta_j (K_j + eta_j) / (K_j + 1))``, so E||F_m||^2 = S."""
    return S / float(np.sum(second_moment(M_tx, beta, K_m, eta)))


def precoder_scale_sc(
    N_tx: int, alpha: np.ndarray, K_s: np.ndarray, eps: np.ndarray
) -> np.ndarray:
    """``mu_s,k^2 = 1 / (N_tx alpha_k (K_k + eps_k) / (K_k + 1))``, so E||f_k||^2 = 1."""
    return 1.0 / second_moment(N_tx, alpha, K_s, eps)


# Closed forms
# ============
def _mrc_terms(
    n: int,
    gain: np.ndarray,
    K: np.ndarray,
    quality: np.ndarray,
    tilde: np.ndarray,
    thetas: np.ndarray,
    power: float,
    factor: float,
    si: np.ndarray,
    sc2sc: np.ndarray,
    form: Form,
    desired_power: Optional[float] = None,
) -> LinkTerms:
    """Phase-1 SINR terms of an n-antenna MRC receiver serving every link.

    ``power`` is the transmit power of the served links, ``si``/``sc2sc`` the
    received interference power per antenna (already multiplied by the
    interferer's power and antenna count).
    """
    second = second_moment(n, gain, K, quality)
    cross = cross_moments(n, gain, K, quality, thetas)
    f2 = factor**2
    p_desired = power if desired_power is None else desired_power

    desired = f2 * p_desired * fourth_moment(n, gain, K, quality)
    ici = f2 * power * cross.sum(axis=1)
    estimation = f2 * power * np.sum(tilde) * second
    si_term = f2 * si * second
    sc2sc_term = f2 * sc2sc * second
    noise = f2 * second

    # E[|h_nk|^2 x (received power at antenna n)], summed over antennas.
    own = power * n * entry_fourth_moment(gain, K, quality)
    if form == "exact":
        entry_power = gain * (K + quality) / (K + 1.0)
        others = power * second * (np.sum(entry_power) - entry_power)
    else:
        Kk, Kj = K[:, None], K[None, :]
        qk, qj = quality[:, None], quality[None, :]
        pair = gain[None, :] * (Kj * qk + Kk * qj + qk * qj) / ((Kk + 1.0) * (Kj + 1.0))
        np.fill_diagonal(pair, 0.0)
        others = power * n * gain * pair.sum(axis=1)

    bracket = second * (1.0 + power * np.sum(tilde) + si + sc2sc) + own + others
    qn = factor * (1.0 - factor) * bracket

    return LinkTerms(desired, ici, estimation, si_term, sc2sc_term, noise, qn)


def se_phase1(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    adc: AdcConfig,
    form: Form = "exact",
) -> RateReport:
    """Closed-form UL/DL SE of phase 1 (MRC at the massive receive arrays).

    Parameters
    ----------
    cfg : SystemConfig
        Must carry phase-1 roles (``M_tx == S``, ``N_tx == 1``).
    fading, stats, interf, adc
        The scenario and its estimation statistics.
    form : Form, optional
        "exact" (default) or "printed".

    Returns
    -------
    RateReport
        Analytic report with every SINR component exposed.

    Raises
    ------
    RoleMismatchError
        If ``cfg`` does not carry phase-1 roles.
    """
    cfg.check_roles(1)
    _check_form(form)
    rho, eps = adc.factors(1)
    S = cfg.S

    mc = _mrc_terms(
        n=cfg.M_rx,
        gain=fading.beta,
        K=fading.K_m,
        quality=stats.eta,
        tilde=stats.beta_tilde,
        thetas=fading.aoa_m,
        power=cfg.p_s,
        factor=rho,
        si=np.full(S, cfg.p_m * interf.sigma2_m * cfg.M_tx),
        sc2sc=np.zeros(S),
        form=form,
    )
    sc = _mrc_terms(
        n=cfg.N_rx,
        gain=fading.alpha,
        K=fading.K_s,
        quality=stats.eps,
        tilde=stats.alpha_tilde,
        thetas=fading.aoa_s,
        power=cfg.p_m,
        factor=eps,
        si=cfg.p_s * interf.sigma2_s,
        sc2sc=cfg.p_s * interf.sigma2_c.sum(axis=1),
        form=form,
        desired_power=cfg.p_m if form == "exact" else cfg.p_s,
    )

    return RateReport(phase=1, method="analytic", prelog=cfg.tau_d, mc=mc, sc=sc)


def _scalar_qn(terms: LinkTerms, factor: float) -> LinkTerms:
    """Adds the QN of a scalar receiver: ``(1 - f) / f`` times every other term."""
    total = terms.desired + terms.interference

    return replace(terms, qn=(1.0 - factor) / factor * total)


def se_phase2(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    adc: AdcConfig,
    form: Form = "exact",
) -> RateReport:
    """Closed-form UL/DL SE of phase 2 (MRT at the massive transmit arrays).

    The MC link k is received by MC antenna k from SC-k's precoder
    ``f_k = mu_s,k g_hat_k``; the SC link k is received by SC-k from the MC
    precoder ``F_m = mu_m H_hat``. Both receivers are scalar, so the QN power
    is ``(1 - rho)/rho`` times the sum of the other terms.

    Raises
    ------
    RoleMismatchError
        If ``cfg`` does not carry phase-2 roles (``M_rx == S``, ``N_rx == 1``).
    """
    cfg.check_roles(2)
    _check_form(form)
    rho, eps = adc.factors(2)
    S, M, N = cfg.S, cfg.M_tx, cfg.N_tx

    mu_s2 = precoder_scale_sc(N, fading.alpha, fading.K_s, stats.eps)
    mu_m2 = precoder_scale_mc(M, S, fading.beta, fading.K_m, stats.eta)

    alpha_err = stats.alpha_tilde if form == "exact" else stats.alpha_tilde**2
    beta_err = stats.beta_tilde if form == "exact" else stats.beta_tilde**2

    cross_g = cross_moments(N, fading.alpha, fading.K_s, stats.eps, fading.aoa2_m)
    r2 = rho**2
    mc = LinkTerms(
        desired=r2 * cfg.p_s * mu_s2 * fourth_moment(N, fading.alpha, fading.K_s, stats.eps),
        ici=r2 * cfg.p_s * (cross_g * mu_s2[None, :]).sum(axis=1),
        estimation=r2 * cfg.p_s * S * alpha_err,
        si=r2 * cfg.p_m * interf.zeta2_m * S,
        sc2sc=np.zeros(S),
        noise=np.full(S, r2),
        qn=np.zeros(S),
    )

    cross_h = cross_moments(M, fading.beta, fading.K_m, stats.eta, fading.aoa2_s)
    e2 = eps**2
    sc = LinkTerms(
        desired=e2 * cfg.p_m * mu_m2 * fourth_moment(M, fading.beta, fading.K_m, stats.eta),
        ici=e2 * cfg.p_m * mu_m2 * cross_h.sum(axis=1),
        estimation=e2 * cfg.p_m * S * beta_err,
        si=e2 * cfg.p_s * interf.zeta2_s,
        sc2sc=e2 * cfg.p_s * interf.zeta2_c.sum(axis=1),
        noise=np.full(S, e2),
        qn=np.zeros(S),
    )

    return RateReport(
        phase=2,
        method="analytic",
        prelog=cfg.tau_d,
        mc=_scalar_qn(mc, rho),
        sc=_scalar_qn(sc, eps),
    )


def se_phase(scenario: Scenario, phase: Phase, form: Form = "exact") -> RateReport:
    """Dispatches to ``se_phase1`` / ``se_phase2`` for a whole scenario."""
    cfg, fading, interf, adc = scenario
    evaluate = se_phase1 if phase == 1 else se_phase2

    return evaluate(cfg, fading, scenario.stats, interf, adc, form=form)


# Limits
# ======
def limit_K_infinity(
    cfg: SystemConfig,
    fading: FadingProfile,
    interf: InterferenceProfile,
    adc: AdcConfig,
    phase: Phase,
    form: Form = "exact",
) -> RateReport:
    """SE as the common Rician K-factor grows without bound.

    The estimation-error terms vanish and the result no longer depends on K or
    on the pilot power. Components are normalized per link (see RateReport).

    Raises
    ------
    HeterogeneousKError
        If the links do not share one K-factor.
    RoleMismatchError
        If ``cfg`` does not carry the roles of ``phase``.
    """
    cfg.check_roles(phase)
    _check_form(form)
    fading.common_K()
    rho, eps = adc.factors(phase)
    S = cfg.S
    zeros = np.zeros(S)
    beta, alpha = fading.beta, fading.alpha

    def _off_diagonal_sum(weights: np.ndarray, phi2: np.ndarray) -> np.ndarray:
        phi2 = phi2.copy()
        np.fill_diagonal(phi2, 0.0)
        return (phi2 * weights[None, :]).sum(axis=1)

    if phase == 1:
        M, N = cfg.M_rx, cfg.N_rx
        phi_m = dirichlet_sq(M, fading.aoa_m[:, None], fading.aoa_m[None, :])
        phi_s = dirichlet_sq(N, fading.aoa_s[:, None], fading.aoa_s[None, :])

        si_m = cfg.p_m * interf.sigma2_m * S
        load_m = np.sum(beta) if form == "exact" else beta
        mc = LinkTerms(
            desired=rho * cfg.p_s * beta * M,
            ici=rho * cfg.p_s / M * _off_diagonal_sum(beta, phi_m),
            estimation=zeros,
            si=np.full(S, rho * si_m),
            sc2sc=zeros,
            noise=np.full(S, rho),
            qn=(1.0 - rho) * (si_m + cfg.p_s * load_m + 1.0),
        )

        si_s = cfg.p_s * interf.sigma2_s
        sc2sc_s = cfg.p_s * interf.sigma2_c.sum(axis=1)
        load_s = np.sum(alpha) if form == "exact" else alpha
        sc = LinkTerms(
            desired=eps * cfg.p_m * alpha * N,
            ici=eps * cfg.p_m / N * _off_diagonal_sum(alpha, phi_s),
            estimation=zeros,
            si=eps * si_s,
            sc2sc=eps * sc2sc_s,
            noise=np.full(S, eps),
            qn=(1.0 - eps) * (si_s + sc2sc_s + cfg.p_m * load_s + 1.0),
        )
    else:
        M, N = cfg.M_tx, cfg.N_tx
        psi_m = dirichlet_sq(N, fading.aoa2_m[:, None], fading.aoa2_m[None, :])
        psi_s = dirichlet_sq(M, fading.aoa2_s[:, None], fading.aoa2_s[None, :])

        mc = LinkTerms(
            desired=rho * cfg.p_s * alpha * N,
            ici=rho * cfg.p_s / N * alpha * _off_diagonal_sum(np.ones(S), psi_m),
            estimation=zeros,
            si=rho * cfg.p_m * interf.zeta2_m * S,
            sc2sc=zeros,
            noise=np.full(S, rho),
            qn=zeros,
        )

        total_beta = np.sum(beta)
        sc = LinkTerms(
            desired=eps * cfg.p_m * beta**2 * M * S,
            ici=eps * cfg.p_m * S * beta / M * _off_diagonal_sum(beta, psi_s),
            estimation=zeros,
            si=eps * total_beta * cfg.p_s * interf.zeta2_s,
            sc2sc=eps * total_beta * cfg.p_s * interf.zeta2_c.sum(axis=1),
            noise=np.full(S, eps * total_beta),
            qn=zeros,
        )
        mc, sc = _scalar_qn(mc, rho), _scalar_qn(sc, eps)

    return RateReport(
        phase=phase, method="limit", prelog=cfg.tau_d, mc=mc, sc=sc, label="k_inf"
    )


def power_scaling_limit(
    E_m: float,
    E_s: float,
    fading: FadingProfile,
    adc: AdcConfig,
    phase: Phase,
    tau_d: float,
    stats: Optional[EstimationStats] = None,
) -> RateReport:
    """Saturated SE when the powers shrink with the massive antenna counts.

    Phase 1 scales ``p_m = E_m / N_rx``, ``p_s = E_s / M_rx``; phase 2 scales
    ``p_m = E_m / M_tx``, ``p_s = E_s / N_tx``.

    Parameters
    ----------
    E_m, E_s : float
        Fixed power budgets (linear).
    fading : FadingProfile
        Large-scale gains and K-factors.
    adc : AdcConfig
        Quantizer resolutions.
    phase : Phase
        Which phase to evaluate.
    tau_d : float
        Pre-log factor.
    stats : Optional[EstimationStats]
        Without it the estimation qualities are taken as 1, which yields the
        textbook limits. With it the limits keep the K and estimation
        dependence of the finite-K closed forms.

    Returns
    -------
    RateReport
        A "limit" report; components are normalized per link.
    """
    if not (E_m > 0 and E_s > 0):
        raise ValueError(f"E_m and E_s must be > 0, got {E_m}, {E_s}.")

    rho, eps = adc.factors(phase)
    S = fading.S
    zeros = np.zeros(S)
    eta = np.ones(S) if stats is None else stats.eta
    eps_q = np.ones(S) if stats is None else stats.eps
    beta_eff = fading.beta * (fading.K_m + eta) / (fading.K_m + 1.0)
    alpha_eff = fading.alpha * (fading.K_s + eps_q) / (fading.K_s + 1.0)

    if phase == 1:
        mc = LinkTerms(rho * E_s * beta_eff, zeros, zeros, zeros, zeros, rho, 1.0 - rho)
        sc = LinkTerms(eps * E_m * alpha_eff, zeros, zeros, zeros, zeros, eps, 1.0 - eps)
    else:
        x_mc = E_s * alpha_eff
        x_sc = E_m * beta_eff**2 * S / np.sum(beta_eff)
        mc = LinkTerms(rho * x_mc, zeros, zeros, zeros, zeros, rho, (1.0 - rho) * (x_mc + 1.0))
        sc = LinkTerms(eps * x_sc, zeros, zeros, zeros, zeros, eps, (1.0 - eps) * (x_sc + 1.0))

    return RateReport(
        phase=phase, method="limit", prelog=tau_d, mc=mc, sc=sc, label="power_scaling"
    )


# Half-duplex baseline
# ====================
def se_half_duplex(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    adc: AdcConfig,
    phase: Phase,
    form: Form = "exact",
) -> RateReport:
    """Half-duplex baseline of ``phase``.

    SI and SC-to-SC variances are zeroed, the data powers doubled (the pilot
    power is kept) and the pre-log factor halved.
    """
    hd_cfg = replace(cfg, p_m=2 * cfg.p_m, p_s=2 * cfg.p_s)
    evaluate = se_phase1 if phase == 1 else se_phase2
    report = evaluate(hd_cfg, fading, stats, interf.silenced(), adc, form=form)

    return replace(report, prelog=report.prelog / 2, label="hd")


def _with_array_size(cfg: SystemConfig, phase: Phase, M: int, ratio: Optional[float]) -> SystemConfig:
    if phase == 1:
        N = cfg.N_rx if ratio is None else max(1, int(round(M * ratio)))
        return replace(cfg, M_rx=M, N_rx=N)

    N = cfg.N_tx if ratio is None else max(1, int(round(M * ratio)))
    return replace(cfg, M_tx=M, N_tx=N)


def fd_hd_crossover(
    scenario: Scenario,
    grid: Iterable[int],
    antenna_ratio: Optional[float] = 0.5,
    form: Form = "exact",
) -> Optional[int]:
    """Smallest MC receive-array size at which phase-1 FD beats HD.

    Scans ``grid`` in order and stops at the first antenna count whose FD sum
    SE (MC plus SC side) exceeds the HD baseline. The SE gap is only
    empirically monotone past the crossover, so this is a scan, not a search.

    Parameters
    ----------
    scenario : Scenario
        Phase-1 scenario.
    grid : Iterable[int]
        Candidate ``M_rx`` values, increasing.
    antenna_ratio : Optional[float]
        ``N_rx = round(ratio * M_rx)``; None keeps ``N_rx`` fixed.

    Returns
    -------
    Optional[int]
        The crossover ``M_rx`` or None when FD never wins on the grid.
    """
    cfg, fading, interf, adc = scenario
    cfg.check_roles(1)
    stats = scenario.stats

    for M in grid:
        point = _with_array_size(cfg, 1, int(M), antenna_ratio)
        fd = se_phase1(point, fading, stats, interf, adc, form=form).sum_se_total
        hd = se_half_duplex(point, fading, stats, interf, adc, 1, form=form).sum_se_total
        logger.debug(f"M_rx={M}: FD sum SE {fd:.4f}, HD sum SE {hd:.4f}")

        if fd > hd:
            return int(M)

    return None


def si_tolerance(
    scenario: Scenario,
    side: Side = "mc",
    upper: float = 10.0,
    form: Form = "exact",
) -> float:
    """Largest phase-1 interference strength at which FD still matches HD.

    On the MC side ``sigma2_m`` is varied; on the SC side ``sigma2_s`` and
    every ``sigma2_c`` are set jointly. The crossing of the FD and HD sum SE
    of that side is located with Brent's method.

    Returns
    -------
    float
        The tolerated variance; 0.0 if HD already wins without interference
        and ``inf`` if FD still wins at ``upper``.
    """
    cfg, fading, interf, adc = scenario
    cfg.check_roles(1)
    stats = scenario.stats

    hd = se_half_duplex(cfg, fading, stats, interf, adc, 1, form=form)
    hd_se = hd.sum_se_mc if side == "mc" else hd.sum_se_sc

    def gap(strength: float) -> float:
        S = cfg.S
        if side == "mc":
            trial = replace(interf, sigma2_m=strength)
        else:
            trial = replace(
                interf, sigma2_s=np.full(S, strength), sigma2_c=np.full((S, S), strength)
            )
        fd = se_phase1(cfg, fading, stats, trial, adc, form=form)
        fd_se = fd.sum_se_mc if side == "mc" else fd.sum_se_sc

        return fd_se - hd_se

    if gap(0.0) <= 0:
        return 0.0
    if gap(upper) > 0:
        return math.inf

    return float(brentq(gap, 0.0, upper, xtol=1e-8))


def antennas_for_target(
    scenario: Scenario,
    target_sum_se: float,
    phase: Phase,
    grid: Iterable[int],
    antenna_ratio: Optional[float] = 0.5,
    form: Form = "exact",
) -> Optional[int]:
    """Smallest massive MC array size on ``grid`` reaching ``target_sum_se``.

    The array is ``M_rx`` in phase 1 and ``M_tx`` in phase 2; the SC array
    follows through ``antenna_ratio``. Returns None when the target is never
    reached.
    """
    cfg, fading, interf, adc = scenario
    cfg.check_roles(phase)
    stats = scenario.stats
    evaluate = se_phase1 if phase == 1 else se_phase2

    for M in grid:
        point = _with_array_size(cfg, phase, int(M), antenna_ratio)
        report = evaluate(point, fading, stats, interf, adc, form=form)
        if report.sum_se_total >= target_sum_se:
            return int(M)

    return None
