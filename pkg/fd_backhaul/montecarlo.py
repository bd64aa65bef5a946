"""Monte Carlo module for estimating the SINR expectations over channel draws.

Every SINR component is evaluated per realization conditioned on the
channels (data symbols and thermal noise are averaged analytically), then
averaged over realizations. The SE is assembled from the averaged components
(a ratio of expectations), never by averaging per-realization SINRs.

Realizations are processed in batches. Batch ``i`` always draws from child
``i`` of ``SeedSequence(seed)`` and the per-batch partial sums are merged in
batch order, so results are bit-identical for any number of workers.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from fd_backhaul.analytic import (
    LinkTerms,
    RateReport,
    cross_moments,
    entry_fourth_moment,
    fourth_moment,
    precoder_scale_mc,
    precoder_scale_sc,
    second_moment,
)
from fd_backhaul.channel import draw_realization
from fd_backhaul.constants import COMPONENTS, STDERR_METHODS, Phase, StderrMethod
from fd_backhaul.logger import setup_custom_logger
from fd_backhaul.params import (
    AdcConfig,
    EstimationStats,
    FadingProfile,
    InterferenceProfile,
    SystemConfig,
    with_phase_roles,
)
from fd_backhaul.quantizer import qn_diag
from fd_backhaul.settings import MC_BATCH, MC_REALIZATIONS, MC_SEED, N_WORKERS

logger = setup_custom_logger(__name__)

# Per-realization samples: name -> array with the realization axis first.
Samples = Dict[str, np.ndarray]
Kernel = Callable[[np.random.Generator, int], Samples]

MIN_REALIZATIONS = 100
MAX_RELATIVE_STDERR = 0.05


@dataclass(frozen=True)
class McSettings:
    """Monte Carlo run settings.

    Attributes
    ----------
    n_realizations : int
        Number of channel realizations.
    seed : int
        Master seed; batch ``i`` uses child ``i`` of ``SeedSequence(seed)``.
    batch : int
        Realizations per parallel unit.
    workers : int
        Worker threads. Does not affect the results.
    progress : bool
        Show a tqdm progress bar over batches.
    stderr : StderrMethod
        How standard errors are estimated. ``"batch_means"`` needs at least
        two batches and falls back to ``"pooled"`` otherwise.
    """

    n_realizations: int = MC_REALIZATIONS
    seed: int = MC_SEED
    batch: int = MC_BATCH
    workers: int = N_WORKERS
    progress: bool = False
    stderr: StderrMethod = "pooled"

    def __post_init__(self):
        if self.stderr not in STDERR_METHODS:
            raise ValueError(f"stderr must be one of {STDERR_METHODS}, got {self.stderr!r}.")
        if self.n_realizations < 1:
            raise ValueError(f"n_realizations must be >= 1, got {self.n_realizations}.")
        if self.batch < 1:
            raise ValueError(f"batch must be >= 1, got {self.batch}.")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}.")

    def batch_sizes(self) -> List[int]:
        full, rest = divmod(self.n_realizations, self.batch)

        return [self.batch] * full + ([rest] if rest else [])


def run_batches(kernel: Kernel, mc: McSettings) -> Tuple[Samples, Samples]:
    """Averages per-realization samples over ``mc.n_realizations`` draws.

    Parameters
    ----------
    kernel : Kernel
        ``kernel(rng, size)`` returns a mapping of per-realization samples,
        each with the realization axis first.
    mc : McSettings
        Run settings.

    Returns
    -------
    Tuple[Samples, Samples]
        Sample means and their standard errors, keyed like the kernel output.
    """
    sizes = mc.batch_sizes()
    children = np.random.SeedSequence(mc.seed).spawn(len(sizes))

    def work(index: int) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
        rng = np.random.default_rng(children[index])
        samples = kernel(rng, sizes[index])

        return {name: (v.sum(axis=0), (v**2).sum(axis=0)) for name, v in samples.items()}

    with ThreadPoolExecutor(max_workers=mc.workers) as pool:
        partials = list(
            tqdm(
                pool.map(work, range(len(sizes))),
                total=len(sizes),
                desc="Monte Carlo batches",
                disable=not mc.progress,
            )
        )

    n = mc.n_realizations
    use_batches = mc.stderr == "batch_means" and len(sizes) > 1
    if mc.stderr == "batch_means" and not use_batches:
        logger.debug("A single batch has no batch-means spread; using pooled standard errors.")

    means: Samples = {}
    stderrs: Samples = {}
    for name in partials[0]:
        # Fixed-order reduction.
        total = np.array(partials[0][name][0], dtype=float)
        total_sq = np.array(partials[0][name][1], dtype=float)
        for partial in partials[1:]:
            total += partial[name][0]
            total_sq += partial[name][1]

        mean = total / n
        if use_batches:
            stderrs[name] = _batch_means_stderr([p[name][0] for p in partials], sizes, mean)
        elif n > 1:
            var = np.maximum(total_sq / n - mean**2, 0.0) * n / (n - 1)
            stderrs[name] = np.sqrt(var / n)
        else:
            stderrs[name] = np.full_like(mean, np.inf)
        means[name] = mean

    return means, stderrs


def _batch_means_stderr(sums: List[np.ndarray], sizes: List[int], mean: np.ndarray) -> np.ndarray:
    """Standard error of the mean from the spread of size-weighted batch means."""
    n, count = sum(sizes), len(sizes)
    spread = np.zeros_like(mean)
    for total, size in zip(sums, sizes):
        spread += (size / n) ** 2 * (total / size - mean) ** 2

    return np.sqrt(spread * count / (count - 1))


def _terms(values: Samples, side: str) -> LinkTerms:
    return LinkTerms(**{name: values[f"{side}_{name}"] for name in COMPONENTS})


def _report(
    phase: Phase, cfg: SystemConfig, kernel: Kernel, mc: McSettings
) -> RateReport:
    if mc.n_realizations < MIN_REALIZATIONS:
        logger.warning(
            f"Only {mc.n_realizations} realizations requested; standard errors are "
            "reported but the estimates are statistically weak."
        )

    means, stderrs = run_batches(kernel, mc)

    with np.errstate(divide="ignore", invalid="ignore"):
        for name, mean in means.items():
            relative = np.where(mean > 0, stderrs[name] / mean, 0.0)
            if np.any(relative > MAX_RELATIVE_STDERR):
                logger.warning(
                    f"Phase {phase} term '{name}' has a relative standard error of "
                    f"{np.max(relative):.1%}."
                )

    return RateReport(
        phase=phase,
        method="montecarlo",
        prelog=cfg.tau_d,
        mc=_terms(means, "mc"),
        sc=_terms(means, "sc"),
        mc_stderr=_terms(stderrs, "mc"),
        sc_stderr=_terms(stderrs, "sc"),
    )


def _abs2(x: np.ndarray) -> np.ndarray:
    return x.real**2 + x.imag**2


def _off_diagonal(x: np.ndarray) -> np.ndarray:
    """Sums the last axis of a (..., S, S) array, skipping the diagonal."""
    return x.sum(axis=-1) - np.diagonal(x, axis1=-2, axis2=-1)


def phase1_kernel(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    adc: AdcConfig,
) -> Kernel:
    """Per-realization SINR components of phase 1 (MRC receivers)."""
    cfg.check_roles(1)
    rho, eps = adc.factors(1)

    def kernel(rng: np.random.Generator, size: int) -> Samples:
        real = draw_realization(cfg, fading, stats, interf, 1, rng, size=size)
        out: Samples = {}

        # UL at the MC BS, MRC with h_hat_k.
        Hh, H = real.H_hat, real.H
        norms = _abs2(Hh).sum(axis=1)
        gram = _abs2(np.einsum("bmk,bmj->bkj", Hh.conj(), Hh))
        leak = _abs2(np.einsum("bmk,bmj->bkj", Hh.conj(), real.E)).sum(axis=-1)
        si = _abs2(np.einsum("bmk,bmi->bki", Hh.conj(), real.Q)).sum(axis=-1)
        rx = cfg.p_s * _abs2(H).sum(axis=-1) + cfg.p_m * _abs2(real.Q).sum(axis=-1) + 1.0
        r2 = rho**2
        out["mc_desired"] = r2 * cfg.p_s * norms**2
        out["mc_ici"] = r2 * cfg.p_s * _off_diagonal(gram)
        out["mc_estimation"] = r2 * cfg.p_s * leak
        out["mc_si"] = r2 * cfg.p_m * si
        out["mc_sc2sc"] = np.zeros_like(norms)
        out["mc_noise"] = r2 * norms
        out["mc_qn"] = np.einsum("bmk,bm->bk", _abs2(Hh), qn_diag(rho, rx))

        # DL at each SC BS, MRC with g_hat_k.
        Gh, G = real.G_hat, real.G
        norms = _abs2(Gh).sum(axis=1)
        gram = _abs2(np.einsum("bnk,bnj->bkj", Gh.conj(), Gh))
        leak = _abs2(np.einsum("bnk,bnj->bkj", Gh.conj(), real.D)).sum(axis=-1)
        si = _abs2(np.einsum("bnk,bnk->bk", Gh.conj(), real.q_s))
        sc2sc = _abs2(np.einsum("bnk,bnkj->bkj", Gh.conj(), real.q_c)).sum(axis=-1)
        rx = (
            cfg.p_m * _abs2(G).sum(axis=-1)[:, :, None]
            + cfg.p_s * _abs2(real.q_s)
            + cfg.p_s * _abs2(real.q_c).sum(axis=-1)
            + 1.0
        )
        e2 = eps**2
        out["sc_desired"] = e2 * cfg.p_m * norms**2
        out["sc_ici"] = e2 * cfg.p_m * _off_diagonal(gram)
        out["sc_estimation"] = e2 * cfg.p_m * leak
        out["sc_si"] = e2 * cfg.p_s * si
        out["sc_sc2sc"] = e2 * cfg.p_s * sc2sc
        out["sc_noise"] = e2 * norms
        out["sc_qn"] = (_abs2(Gh) * qn_diag(eps, rx)).sum(axis=1)

        return out

    return kernel


def phase2_kernel(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    adc: AdcConfig,
) -> Kernel:
    """Per-realization SINR components of phase 2 (MRT, scalar receivers)."""
    cfg.check_roles(2)
    rho, eps = adc.factors(2)
    S, M, N = cfg.S, cfg.M_tx, cfg.N_tx
    mu_m2 = precoder_scale_mc(M, S, fading.beta, fading.K_m, stats.eta)
    mu_s2 = precoder_scale_sc(N, fading.alpha, fading.K_s, stats.eps)

    def kernel(rng: np.random.Generator, size: int) -> Samples:
        real = draw_realization(cfg, fading, stats, interf, 2, rng, size=size)
        out: Samples = {}
        ones = np.ones((size, S))

        # MC receive antenna k, fed by f_j = mu_s,j g_hat_j from every SC BS.
        Gh = real.G_hat
        gram = np.einsum("bnk,bnj->bkj", Gh.conj(), Gh)
        leak = np.einsum("bnk,bnj->bkj", real.D.conj(), Gh)
        zF = _abs2(np.einsum("bkm,bmj->bkj", real.z_m, real.H_hat)).sum(axis=-1)
        weighted = _abs2(gram) * mu_s2
        r2 = rho**2
        out["mc_desired"] = r2 * cfg.p_s * np.diagonal(weighted, axis1=1, axis2=2)
        out["mc_ici"] = r2 * cfg.p_s * _off_diagonal(weighted)
        out["mc_estimation"] = r2 * cfg.p_s * (_abs2(leak) * mu_s2).sum(axis=-1)
        out["mc_si"] = r2 * cfg.p_m * mu_m2 * zF
        out["mc_sc2sc"] = np.zeros((size, S))
        out["mc_noise"] = r2 * ones
        rx = cfg.p_s * (_abs2(gram + leak) * mu_s2).sum(axis=-1) + cfg.p_m * mu_m2 * zF + 1.0
        out["mc_qn"] = qn_diag(rho, rx)

        # SC-k receive antenna, fed by F_m = mu_m H_hat.
        Hh = real.H_hat
        gram = _abs2(np.einsum("bmk,bmj->bkj", Hh.conj(), Hh))
        leak = _abs2(np.einsum("bmk,bmj->bkj", real.E.conj(), Hh))
        true = _abs2(np.einsum("bmk,bmj->bkj", real.H.conj(), Hh)).sum(axis=-1)
        zs = _abs2(np.einsum("bkn,bnk->bk", real.z_s, Gh)) * mu_s2
        zc = _abs2(np.einsum("bkjn,bnj->bkj", real.z_c, Gh)) * mu_s2
        zc = zc.sum(axis=-1)
        e2 = eps**2
        out["sc_desired"] = e2 * cfg.p_m * mu_m2 * np.diagonal(gram, axis1=1, axis2=2)
        out["sc_ici"] = e2 * cfg.p_m * mu_m2 * _off_diagonal(gram)
        out["sc_estimation"] = e2 * cfg.p_m * mu_m2 * leak.sum(axis=-1)
        out["sc_si"] = e2 * cfg.p_s * zs
        out["sc_sc2sc"] = e2 * cfg.p_s * zc
        out["sc_noise"] = e2 * ones
        rx = cfg.p_m * mu_m2 * true + cfg.p_s * (zs + zc) + 1.0
        out["sc_qn"] = qn_diag(eps, rx)

        return out

    return kernel


def mc_se_phase1(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    adc: AdcConfig,
    mc: Optional[McSettings] = None,
) -> RateReport:
    """Monte Carlo estimate of the phase-1 SE, with per-component standard errors.

    Raises
    ------
    RoleMismatchError
        If ``cfg`` does not carry phase-1 roles.
    """
    mc = McSettings() if mc is None else mc
    kernel = phase1_kernel(cfg, fading, stats, interf, adc)

    return _report(1, cfg, kernel, mc)


def mc_se_phase2(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    adc: AdcConfig,
    mc: Optional[McSettings] = None,
) -> RateReport:
    """Monte Carlo estimate of the phase-2 SE with MRT precoders.

    ``F_m = mu_m H_hat`` and ``f_k = mu_s,k g_hat_k`` are normalized so that
    ``E||F_m||_F^2 = S`` and ``E||f_k||^2 = 1``. The SI rows ``z`` are drawn
    independently of the channel estimates.

    Raises
    ------
    RoleMismatchError
        If ``cfg`` does not carry phase-2 roles.
    """
    mc = McSettings() if mc is None else mc
    kernel = phase2_kernel(cfg, fading, stats, interf, adc)

    return _report(2, cfg, kernel, mc)


def precoder_power(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    mc: Optional[McSettings] = None,
) -> pd.DataFrame:
    """Sample means of the MRT precoder powers ``||F_m||_F^2`` and ``||f_k||^2``.

    Returns
    -------
    pd.DataFrame
        Columns ``name``, ``target``, ``empirical``, ``std_error``.
    """
    mc = McSettings() if mc is None else mc
    cfg.check_roles(2)
    S, M, N = cfg.S, cfg.M_tx, cfg.N_tx
    mu_m2 = precoder_scale_mc(M, S, fading.beta, fading.K_m, stats.eta)
    mu_s2 = precoder_scale_sc(N, fading.alpha, fading.K_s, stats.eps)

    def kernel(rng: np.random.Generator, size: int) -> Samples:
        real = draw_realization(cfg, fading, stats, interf, 2, rng, size=size)

        return {
            "F_m": mu_m2 * _abs2(real.H_hat).sum(axis=(1, 2)),
            "f_s": mu_s2 * _abs2(real.G_hat).sum(axis=1),
        }

    means, stderrs = run_batches(kernel, mc)
    rows = [
        {
            "name": "||F_m||^2",
            "target": float(S),
            "empirical": float(means["F_m"]),
            "std_error": float(stderrs["F_m"]),
        }
    ]
    for k in range(S):
        rows.append(
            {
                "name": f"||f_s{k + 1}||^2",
                "target": 1.0,
                "empirical": float(means["f_s"][k]),
                "std_error": float(stderrs["f_s"][k]),
            }
        )

    return pd.DataFrame(rows)


def moment_oracle(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    mc: Optional[McSettings] = None,
    interf: Optional[InterferenceProfile] = None,
) -> pd.DataFrame:
    """Checks the channel-moment identities behind the closed forms.

    Draws phase-1 channels (``cfg`` is switched to phase-1 roles if needed)
    and compares, link by link, the analytic and empirical values of
    ``E|h_nk|^2``, ``E|h_nk|^4``, ``E|e_nk|^2``, ``E|h_nk q_ni|^2``,
    ``E||h_k||^4``, ``E|h_k^H h_j|^2`` and ``E|g_nk|^2``.

    Parameters
    ----------
    cfg, fading, stats
        Scenario and estimation statistics.
    mc : Optional[McSettings]
        Run settings.
    interf : Optional[InterferenceProfile]
        Supplies ``sigma2_m`` for the SI moment; defaults to the reference
        interference profile.

    Returns
    -------
    pd.DataFrame
        Columns ``name``, ``link``, ``analytic``, ``empirical``,
        ``std_error`` and ``z`` (discrepancy in standard errors).
    """
    mc = McSettings() if mc is None else mc
    cfg = with_phase_roles(cfg, 1)
    interf = InterferenceProfile.uniform(cfg.S) if interf is None else interf
    S, M, N = cfg.S, cfg.M_rx, cfg.N_rx
    beta, K_m, eta = fading.beta, fading.K_m, stats.eta
    pairs = [(k, j) for k in range(S) for j in range(k + 1, S)]

    def kernel(rng: np.random.Generator, size: int) -> Samples:
        real = draw_realization(cfg, fading, stats, interf, 1, rng, size=size)
        h2 = _abs2(real.H_hat)
        gram = _abs2(np.einsum("bmk,bmj->bkj", real.H_hat.conj(), real.H_hat))
        q2 = _abs2(real.Q).mean(axis=-1)
        samples = {
            "E|h_nk|^2": h2.mean(axis=1),
            "E|h_nk|^4": (h2**2).mean(axis=1),
            "E|e_nk|^2": _abs2(real.E).mean(axis=1),
            "E|h_nk q_ni|^2": (h2 * q2[:, :, None]).mean(axis=1),
            "E||h_k||^4": h2.sum(axis=1) ** 2,
            "E|g_nk|^2": _abs2(real.G_hat).mean(axis=1),
        }
        if pairs:
            samples["E|h_k^H h_j|^2"] = np.stack([gram[:, k, j] for k, j in pairs], axis=1)

        return samples

    second = second_moment(1, beta, K_m, eta)
    analytic: Dict[str, np.ndarray] = {
        "E|h_nk|^2": second,
        "E|h_nk|^4": entry_fourth_moment(beta, K_m, eta),
        "E|e_nk|^2": stats.beta_tilde,
        "E|h_nk q_ni|^2": interf.sigma2_m * second,
        "E||h_k||^4": fourth_moment(M, beta, K_m, eta),
        "E|g_nk|^2": second_moment(1, fading.alpha, fading.K_s, stats.eps),
    }
    if pairs:
        cross = cross_moments(M, beta, K_m, eta, fading.aoa_m)
        analytic["E|h_k^H h_j|^2"] = np.array([cross[k, j] for k, j in pairs])

    means, stderrs = run_batches(kernel, mc)

    rows = []
    for name, values in analytic.items():
        labels = [f"{k + 1},{j + 1}" for k, j in pairs] if "h_j" in name else range(1, S + 1)
        for i, link in enumerate(labels):
            err = float(stderrs[name][i])
            diff = float(means[name][i]) - float(values[i])
            rows.append(
                {
                    "name": name,
                    "link": str(link),
                    "analytic": float(values[i]),
                    "empirical": float(means[name][i]),
                    "std_error": err,
                    "z": diff / err if err > 0 else (0.0 if diff == 0 else np.inf),
                }
            )

    logger.info(f"Moment oracle: {len(rows)} identities over {mc.n_realizations} draws.")
    logger.debug(f"Receive arrays M_rx={M}, N_rx={N}.")

    return pd.DataFrame(rows)
