"""Params module for the scenario configuration and derived statistics.

A scenario is four immutable objects:

  * ``SystemConfig``: cell and antenna counts, frame lengths and powers.
  * ``FadingProfile``: large-scale gains, Rician K-factors and LoS angles.
  * ``InterferenceProfile``: residual self-interference (SI) and SC-to-SC
    interference variances for both phases.
  * ``AdcConfig``: ADC resolution of every receiver class.

Powers and K-factors are linear everywhere inside the package. dB values
are converted only when a scenario file is loaded (``scenario_from_dict``).
"""
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, NamedTuple, Optional, Tuple, Union

import numpy as np
import yaml

from fd_backhaul.constants import KAPPA_TABLE, PHASES, Phase
from fd_backhaul.logger import setup_custom_logger
from fd_backhaul.utils import db_to_linear, to_builtin

logger = setup_custom_logger(__name__)

# A quantizer resolution: a positive integer number of bits or ``math.inf``.
Bits = Union[int, float]


class RoleMismatchError(ValueError):
    """Raised when antenna counts do not match the roles of a phase."""


class HeterogeneousKError(ValueError):
    """Raised when a K-factor limit is requested for link-dependent K."""


def kappa(b: Bits) -> float:
    """Returns the distortion factor of a ``b``-bit ADC.

    Parameters
    ----------
    b : Bits
        Resolution in bits, a positive integer or ``math.inf``.

    Returns
    -------
    float
        Tabulated value for b <= 5, ``pi * sqrt(3) / 2 * 2 ** (-2b)`` above
        and 0 for infinite resolution.

    Raises
    ------
    ValueError
        If ``b`` is not a positive integer or infinite.
    """
    if isinstance(b, (int, float, np.integer, np.floating)) and math.isinf(b) and b > 0:
        return 0.0

    if isinstance(b, bool) or not isinstance(b, (int, float, np.integer, np.floating)):
        raise ValueError(f"ADC resolution must be a number of bits, got {b!r}.")

    if not float(b).is_integer() or b < 1:
        raise ValueError(f"ADC resolution must be a positive integer or inf, got {b}.")

    bits = int(b)
    if bits in KAPPA_TABLE:
        return KAPPA_TABLE[bits]

    return math.pi * math.sqrt(3.0) / 2.0 * 2.0 ** (-2 * bits)


def kappa_table() -> Dict[int, float]:
    """Returns a copy of the tabulated distortion factors (b = 1..5)."""
    return dict(KAPPA_TABLE)


def distortion(b: Bits) -> float:
    """Linear gain ``1 - kappa(b)`` of the additive quantization noise model."""
    return 1.0 - kappa(b)


def uniform_aoas(S: int) -> np.ndarray:
    """Deterministic, evenly spaced angles ``-pi/2 + pi (k - 1/2) / S``."""
    k = np.arange(1, S + 1)

    return -np.pi / 2 + np.pi * (k - 0.5) / S


@dataclass(frozen=True)
class SystemConfig:
    """Cell/antenna counts, frame lengths and transmit powers.

    The antenna counts hold the roles of one phase. In phase 1 the MC BS
    transmits with ``M_tx == S`` antennas and every SC BS with ``N_tx == 1``;
    in phase 2 the MC BS receives with ``M_rx == S`` antennas and every SC BS
    with ``N_rx == 1``. Use ``with_phase_roles`` to move between them.
    """

    S: int
    M_rx: int
    M_tx: int
    N_rx: int
    N_tx: int
    T: int
    tau_p: int
    p_m: float
    p_s: float
    p_tau: float

    def __post_init__(self):
        if self.S < 1:
            raise ValueError(f"S must be >= 1, got {self.S}.")

        for name in ("M_rx", "M_tx", "N_rx", "N_tx"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value}.")

        if self.tau_p < 2 * self.S:
            raise ValueError(
                f"Pilot length tau_p={self.tau_p} must be at least 2S={2 * self.S}."
            )
        if self.T <= self.tau_p:
            raise ValueError(
                f"Coherence interval T={self.T} must exceed tau_p={self.tau_p}."
            )

        for name in ("p_m", "p_s", "p_tau"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}.")

    @property
    def tau_d(self) -> float:
        """Pre-log factor (T - tau_p) / 2T shared by the two phases."""
        return (self.T - self.tau_p) / (2 * self.T)

    def roles_ok(self, phase: Phase) -> bool:
        if phase == 1:
            return self.M_tx == self.S and self.N_tx == 1

        return self.M_rx == self.S and self.N_rx == 1

    def check_roles(self, phase: Phase):
        """Raises ``RoleMismatchError`` if the antenna roles do not fit ``phase``."""
        _check_phase(phase)

        if phase == 1:
            if self.M_tx != self.S:
                raise RoleMismatchError(
                    f"phase 1 requires M_tx == S, got M_tx={self.M_tx}, S={self.S}."
                )
            if self.N_tx != 1:
                raise RoleMismatchError(f"phase 1 requires N_tx == 1, got {self.N_tx}.")
        else:
            if self.M_rx != self.S:
                raise RoleMismatchError(
                    f"phase 2 requires M_rx == S, got M_rx={self.M_rx}, S={self.S}."
                )
            if self.N_rx != 1:
                raise RoleMismatchError(f"phase 2 requires N_rx == 1, got {self.N_rx}.")


def _check_phase(phase: Any):
    if phase not in PHASES:
        raise ValueError(f"phase must be one of {PHASES}, got {phase!r}.")


def _per_link(name: str, value: Any, S: Optional[int] = None) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.ndim == 0 and S is not None:
        arr = np.full(S, float(arr))

    if arr.ndim != 1:
        raise ValueError(f"{name} must be a scalar or a vector, got shape {arr.shape}.")
    if S is not None and arr.size != S:
        raise ValueError(f"{name} must have S={S} entries, got {arr.size}.")

    arr.setflags(write=False)

    return arr


def _per_pair(name: str, value: Any, S: int) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full((S, S), float(arr))

    if arr.shape != (S, S):
        raise ValueError(f"{name} must be a scalar or an SxS matrix, got {arr.shape}.")

    # Self-pairs are not SC-to-SC links.
    np.fill_diagonal(arr, 0.0)
    arr.setflags(write=False)

    return arr


@dataclass(frozen=True, eq=False)
class FadingProfile:
    """Large-scale gains, Rician K-factors and ULA angles of arrival.

    ``beta[k]`` belongs to the MC <-> SC-k links ``h_k`` and ``alpha[k]`` to the
    links ``g_k``. ``K_m`` and ``K_s`` are their K-factors. ``aoa_m``/``aoa_s``
    steer ``h_k``/``g_k`` in phase 1; ``aoa2_m`` steers ``g_k`` and ``aoa2_s``
    steers ``h_k`` in phase 2.
    """

    beta: np.ndarray
    alpha: np.ndarray
    K_m: np.ndarray
    K_s: np.ndarray
    aoa_m: np.ndarray
    aoa_s: np.ndarray
    aoa2_m: np.ndarray
    aoa2_s: np.ndarray

    def __post_init__(self):
        S = np.size(self.beta)
        for f in fields(self):
            object.__setattr__(self, f.name, _per_link(f.name, getattr(self, f.name), S))

        if S < 1:
            raise ValueError("FadingProfile needs at least one link.")
        if np.any(self.beta <= 0) or np.any(self.alpha <= 0):
            raise ValueError("Large-scale gains beta and alpha must be > 0.")
        if np.any(self.K_m < 0) or np.any(self.K_s < 0):
            raise ValueError("Rician K-factors must be >= 0.")

        for name in ("aoa_m", "aoa_s", "aoa2_m", "aoa2_s"):
            angles = getattr(self, name)
            if np.any(angles < -np.pi / 2) or np.any(angles >= np.pi / 2):
                raise ValueError(f"{name} must lie in [-pi/2, pi/2).")

    @property
    def S(self) -> int:
        return self.beta.size

    @classmethod
    def uniform(
        cls,
        S: int,
        beta: float = 0.2,
        alpha: float = 0.2,
        K: float = 1.0,
        K_s: Optional[float] = None,
    ) -> "FadingProfile":
        """Identical links with evenly spaced angles (see ``uniform_aoas``)."""
        aoas = uniform_aoas(S)

        return cls(
            beta=np.full(S, beta),
            alpha=np.full(S, alpha),
            K_m=np.full(S, K),
            K_s=np.full(S, K if K_s is None else K_s),
            aoa_m=aoas,
            aoa_s=aoas,
            aoa2_m=aoas,
            aoa2_s=aoas,
        )

    def with_K(self, K: float) -> "FadingProfile":
        """Copy with a common K-factor on every link."""
        return replace(self, K_m=np.full(self.S, K), K_s=np.full(self.S, K))

    def common_K(self) -> float:
        """Returns the K-factor shared by every link.

        Raises
        ------
        HeterogeneousKError
            If the links do not share one K-factor.
        """
        values = np.concatenate([self.K_m, self.K_s])
        if not np.all(values == values[0]):
            raise HeterogeneousKError(
                "K-factor limits require K_m[k] == K_s[k] == K for every link, "
                f"got K_m={self.K_m.tolist()}, K_s={self.K_s.tolist()}."
            )

        return float(values[0])


@dataclass(frozen=True, eq=False)
class InterferenceProfile:
    """SI and SC-to-SC interference variances.

    Phase 1: ``sigma2_m`` (MC SI), ``sigma2_s[k]`` (SI at SC-k) and
    ``sigma2_c[k][j]`` (SC-j into SC-k). Phase 2: ``zeta2_m[k]`` (SI at MC
    receive antenna k), ``zeta2_s[k]`` and ``zeta2_c[k][j]``. Diagonals of the
    SC-to-SC matrices are forced to zero.
    """

    sigma2_m: float
    sigma2_s: np.ndarray
    sigma2_c: np.ndarray
    zeta2_m: np.ndarray
    zeta2_s: np.ndarray
    zeta2_c: np.ndarray

    def __post_init__(self):
        S = np.size(self.sigma2_s)
        object.__setattr__(self, "sigma2_m", float(self.sigma2_m))
        object.__setattr__(self, "sigma2_s", _per_link("sigma2_s", self.sigma2_s, S))
        object.__setattr__(self, "zeta2_m", _per_link("zeta2_m", self.zeta2_m, S))
        object.__setattr__(self, "zeta2_s", _per_link("zeta2_s", self.zeta2_s, S))
        object.__setattr__(self, "sigma2_c", _per_pair("sigma2_c", self.sigma2_c, S))
        object.__setattr__(self, "zeta2_c", _per_pair("zeta2_c", self.zeta2_c, S))

        if self.sigma2_m < 0:
            raise ValueError(f"sigma2_m must be >= 0, got {self.sigma2_m}.")
        for name in ("sigma2_s", "sigma2_c", "zeta2_m", "zeta2_s", "zeta2_c"):
            if np.any(getattr(self, name) < 0):
                raise ValueError(f"{name} must be >= 0.")

    @property
    def S(self) -> int:
        return self.sigma2_s.size

    @classmethod
    def uniform(
        cls,
        S: int,
        sigma2_m: float = 0.3,
        sigma2_s: float = 0.3,
        sigma2_c: float = 0.2,
        zeta2_m: float = 0.3,
        zeta2_s: float = 0.3,
        zeta2_c: float = 0.2,
    ) -> "InterferenceProfile":
        return cls(
            sigma2_m=sigma2_m,
            sigma2_s=np.full(S, sigma2_s),
            sigma2_c=np.full((S, S), sigma2_c),
            zeta2_m=np.full(S, zeta2_m),
            zeta2_s=np.full(S, zeta2_s),
            zeta2_c=np.full((S, S), zeta2_c),
        )

    def silenced(self) -> "InterferenceProfile":
        """Copy with every SI and SC-to-SC variance set to zero."""
        S = self.S

        return InterferenceProfile.uniform(S, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    def with_strength(self, value: float, phase: Phase) -> "InterferenceProfile":
        """Copy with every variance of ``phase`` set to ``value``."""
        S = self.S
        if phase == 1:
            return replace(
                self,
                sigma2_m=value,
                sigma2_s=np.full(S, value),
                sigma2_c=np.full((S, S), value),
            )

        return replace(
            self,
            zeta2_m=np.full(S, value),
            zeta2_s=np.full(S, value),
            zeta2_c=np.full((S, S), value),
        )


@dataclass(frozen=True)
class AdcConfig:
    """ADC resolution of the MC and SC receivers in each phase."""

    b_m1: Bits
    b_s1: Bits
    b_m2: Bits
    b_s2: Bits

    def __post_init__(self):
        for f in fields(self):
            # Validates and rejects b <= 0.
            kappa(getattr(self, f.name))

    @classmethod
    def uniform(cls, b: Bits) -> "AdcConfig":
        return cls(b, b, b, b)

    @property
    def rho1(self) -> float:
        return distortion(self.b_m1)

    @property
    def eps1(self) -> float:
        return distortion(self.b_s1)

    @property
    def rho2(self) -> float:
        return distortion(self.b_m2)

    @property
    def eps2(self) -> float:
        return distortion(self.b_s2)

    def factors(self, phase: Phase) -> Tuple[float, float]:
        """Returns ``(rho, eps)``, the MC and SC distortion factors of ``phase``."""
        _check_phase(phase)
        if phase == 1:
            return self.rho1, self.eps1

        return self.rho2, self.eps2


@dataclass(frozen=True, eq=False)
class EstimationStats:
    """Per-link MMSE statistics.

    ``eta``/``eps`` are the estimation qualities of ``h_k``/``g_k``,
    ``beta_hat``/``alpha_hat`` the per-entry variances of the random part of
    the estimates, ``beta_tilde``/``alpha_tilde`` the error variances, and
    ``xi``/``alpha_xi`` the scattered-component variances they split.
    """

    eta: np.ndarray
    eps: np.ndarray
    beta_hat: np.ndarray
    beta_tilde: np.ndarray
    xi: np.ndarray
    alpha_hat: np.ndarray
    alpha_tilde: np.ndarray
    alpha_xi: np.ndarray


def derive_estimation_stats(cfg: SystemConfig, fading: FadingProfile) -> EstimationStats:
    """Computes the MMSE estimation statistics of every link.

    Parameters
    ----------
    cfg : SystemConfig
        Pilot length and pilot power are read from here.
    fading : FadingProfile
        Large-scale gains and K-factors.

    Returns
    -------
    EstimationStats
        ``eta = tau_p p_tau beta / (1 + tau_p p_tau beta)``,
        ``beta_hat = xi eta``, ``beta_tilde = xi / (1 + tau_p p_tau beta)`` with
        ``xi = beta / (K_m + 1)``, and likewise for ``alpha`` with ``K_s``.
    """
    if fading.S != cfg.S:
        raise ValueError(f"FadingProfile has {fading.S} links, expected S={cfg.S}.")

    snr = cfg.tau_p * cfg.p_tau

    def _split(gain: np.ndarray, K: np.ndarray):
        # 1 / (1 + 1 / x) keeps eta finite when the pilot power is infinite.
        with np.errstate(divide="ignore"):
            quality = 1.0 / (1.0 + 1.0 / (snr * gain))
        scattered = gain / (K + 1.0)

        return quality, scattered * quality, scattered / (1.0 + snr * gain), scattered

    eta, beta_hat, beta_tilde, xi = _split(fading.beta, fading.K_m)
    eps, alpha_hat, alpha_tilde, alpha_xi = _split(fading.alpha, fading.K_s)

    return EstimationStats(
        eta=eta,
        eps=eps,
        beta_hat=beta_hat,
        beta_tilde=beta_tilde,
        xi=xi,
        alpha_hat=alpha_hat,
        alpha_tilde=alpha_tilde,
        alpha_xi=alpha_xi,
    )


class Scenario(NamedTuple):
    """A complete scenario; unpacks as ``cfg, fading, interf, adc``."""

    cfg: SystemConfig
    fading: FadingProfile
    interf: InterferenceProfile
    adc: AdcConfig

    @property
    def stats(self) -> EstimationStats:
        return derive_estimation_stats(self.cfg, self.fading)

    def for_phase(self, phase: Phase) -> "Scenario":
        """Copy whose antenna counts carry the roles of ``phase``."""
        return self._replace(cfg=with_phase_roles(self.cfg, phase))


def default_scenario(phase: Phase = 1, M: int = 256, N: int = 128) -> Scenario:
    """Returns the reference scenario.

    S=6, beta=alpha=0.2, sigma2_m=sigma2_s=0.3, sigma2_c=0.2, the same values
    for the zeta variances, p_m=p_s=p_tau=10 dB, T=200, tau_p=12, K=0 dB and
    3-bit ADCs everywhere.

    Parameters
    ----------
    phase : Phase, optional
        Antenna roles of the returned config, by default 1.
    M : int, optional
        Massive antenna count of the MC BS, by default 256.
    N : int, optional
        Massive antenna count of each SC BS, by default 128.
    """
    S = 6
    p = db_to_linear(10.0)
    cfg = SystemConfig(
        S=S, M_rx=M, M_tx=S, N_rx=N, N_tx=1, T=200, tau_p=2 * S, p_m=p, p_s=p, p_tau=p
    )

    scenario = Scenario(
        cfg=cfg,
        fading=FadingProfile.uniform(S, beta=0.2, alpha=0.2, K=db_to_linear(0.0)),
        interf=InterferenceProfile.uniform(S),
        adc=AdcConfig.uniform(3),
    )

    return scenario.for_phase(phase)


def with_phase_roles(cfg: SystemConfig, phase: Phase) -> SystemConfig:
    """Moves the massive arrays of ``cfg`` to the roles of ``phase``.

    The same physical arrays switch from receiving (phase 1) to transmitting
    (phase 2). A config that already fits ``phase`` is returned unchanged.
    """
    _check_phase(phase)

    if cfg.roles_ok(phase):
        return cfg

    if phase == 1:
        return replace(cfg, M_rx=cfg.M_tx, N_rx=cfg.N_tx, M_tx=cfg.S, N_tx=1)

    return replace(cfg, M_tx=cfg.M_rx, N_tx=cfg.N_rx, M_rx=cfg.S, N_rx=1)


def with_power_scaling(
    cfg: SystemConfig, E_m: float, E_s: float, phase: Phase
) -> SystemConfig:
    """Scales the data powers down with the massive antenna counts.

    Phase 1: ``p_m = E_m / N_rx`` and ``p_s = E_s / M_rx``. Phase 2:
    ``p_m = E_m / M_tx`` and ``p_s = E_s / N_tx``. ``p_tau`` is kept.
    """
    cfg.check_roles(phase)
    if not (E_m > 0 and E_s > 0):
        raise ValueError(f"E_m and E_s must be > 0, got {E_m}, {E_s}.")

    if phase == 1:
        return replace(cfg, p_m=E_m / cfg.N_rx, p_s=E_s / cfg.M_rx)

    return replace(cfg, p_m=E_m / cfg.M_tx, p_s=E_s / cfg.N_tx)


def resize_scenario(scenario: Scenario, S: int) -> Scenario:
    """Rebuilds a homogeneous scenario for ``S`` small cells.

    Every per-link quantity takes the value of the first link, ``tau_p``
    becomes ``2S`` and the role-fixed antenna counts follow ``S``.
    """
    cfg, fading, interf, adc = scenario
    phase: Phase = 1 if cfg.roles_ok(1) else 2

    cfg = replace(
        cfg,
        S=S,
        tau_p=2 * S,
        M_tx=S if phase == 1 else cfg.M_tx,
        M_rx=S if phase == 2 else cfg.M_rx,
    )
    fading = FadingProfile.uniform(
        S,
        beta=float(fading.beta[0]),
        alpha=float(fading.alpha[0]),
        K=float(fading.K_m[0]),
        K_s=float(fading.K_s[0]),
    )
    offdiag = (0, 1) if interf.S > 1 else (0, 0)
    interf = InterferenceProfile.uniform(
        S,
        sigma2_m=interf.sigma2_m,
        sigma2_s=float(interf.sigma2_s[0]),
        sigma2_c=float(interf.sigma2_c[offdiag]),
        zeta2_m=float(interf.zeta2_m[0]),
        zeta2_s=float(interf.zeta2_s[0]),
        zeta2_c=float(interf.zeta2_c[offdiag]),
    )

    return Scenario(cfg, fading, interf, adc)


# Scenario files
# ==============
def parse_bits(value: Any) -> Bits:
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinite", "infinity", ".inf"):
            return math.inf
        value = float(value)

    if isinstance(value, float) and value.is_integer():
        return int(value)

    return value


def _linear(section: Dict[str, Any], key: str, default: Any) -> Any:
    """Reads ``key`` (linear) or ``key_db`` (dB) from a scenario section."""
    if key in section:
        return section[key]
    if f"{key}_db" in section:
        return db_to_linear(section[f"{key}_db"])

    return default


def scenario_from_dict(data: Dict[str, Any]) -> Scenario:
    """Builds a scenario from its mapping form.

    Sections ``system``, ``fading``, ``interference`` and ``adc`` are all
    optional; missing keys fall back to ``default_scenario()``. Powers and
    K-factors may be given linearly (``p_m``, ``K``) or in dB (``p_m_db``,
    ``K_db``). Per-link entries accept a scalar (broadcast) or a list.

    Examples
    --------
    >>> scenario_from_dict({"system": {"M_rx": 300, "N_rx": 200},
    ...                     "fading": {"K_db": 20}, "adc": {"b": 3}})
    """
    base = default_scenario()
    system = dict(data.get("system") or {})
    fading_d = dict(data.get("fading") or {})
    interf_d = dict(data.get("interference") or {})
    adc_d = dict(data.get("adc") or {})

    S = int(system.get("S", base.cfg.S))
    cfg = SystemConfig(
        S=S,
        M_rx=int(system.get("M_rx", base.cfg.M_rx)),
        M_tx=int(system.get("M_tx", S)),
        N_rx=int(system.get("N_rx", base.cfg.N_rx)),
        N_tx=int(system.get("N_tx", 1)),
        T=int(system.get("T", base.cfg.T)),
        tau_p=int(system.get("tau_p", 2 * S)),
        p_m=float(_linear(system, "p_m", base.cfg.p_m)),
        p_s=float(_linear(system, "p_s", base.cfg.p_s)),
        p_tau=float(_linear(system, "p_tau", base.cfg.p_tau)),
    )

    K = _linear(fading_d, "K", base.fading.K_m[0])
    aoas = uniform_aoas(S)
    fading = FadingProfile(
        beta=_per_link("beta", fading_d.get("beta", base.fading.beta[0]), S),
        alpha=_per_link("alpha", fading_d.get("alpha", base.fading.alpha[0]), S),
        K_m=_per_link("K_m", _linear(fading_d, "K_m", K), S),
        K_s=_per_link("K_s", _linear(fading_d, "K_s", K), S),
        aoa_m=fading_d.get("aoa_m", aoas),
        aoa_s=fading_d.get("aoa_s", aoas),
        aoa2_m=fading_d.get("aoa2_m", aoas),
        aoa2_s=fading_d.get("aoa2_s", aoas),
    )

    def _get(key: str, default: float) -> Any:
        return interf_d.get(key, default)

    interf = InterferenceProfile(
        sigma2_m=_get("sigma2_m", base.interf.sigma2_m),
        sigma2_s=_per_link("sigma2_s", _get("sigma2_s", base.interf.sigma2_s[0]), S),
        sigma2_c=_get("sigma2_c", base.interf.sigma2_c[0, 1]),
        zeta2_m=_per_link("zeta2_m", _get("zeta2_m", base.interf.zeta2_m[0]), S),
        zeta2_s=_per_link("zeta2_s", _get("zeta2_s", base.interf.zeta2_s[0]), S),
        zeta2_c=_get("zeta2_c", base.interf.zeta2_c[0, 1]),
    )

    b = parse_bits(adc_d.get("b", base.adc.b_m1))
    adc = AdcConfig(
        b_m1=parse_bits(adc_d.get("b_m1", b)),
        b_s1=parse_bits(adc_d.get("b_s1", b)),
        b_m2=parse_bits(adc_d.get("b_m2", b)),
        b_s2=parse_bits(adc_d.get("b_s2", b)),
    )

    return Scenario(cfg, fading, interf, adc)


def scenario_to_dict(scenario: Scenario) -> Dict[str, Any]:
    """Fully resolved (linear, per-link) mapping form of ``scenario``."""
    cfg, fading, interf, adc = scenario

    data = {
        "system": {f.name: getattr(cfg, f.name) for f in fields(cfg)},
        "fading": {f.name: getattr(fading, f.name) for f in fields(fading)},
        "interference": {f.name: getattr(interf, f.name) for f in fields(interf)},
        "adc": {f.name: getattr(adc, f.name) for f in fields(adc)},
    }

    return to_builtin(data)


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Reads a YAML scenario file (see ``scenario_from_dict``)."""
    with open(path, "r") as f:
        data = yaml.safe_load(f) or {}

    logger.info(f"Loaded scenario file: {path}")

    return scenario_from_dict(data)


def save_scenario(scenario: Scenario, path: Union[str, Path]):
    """Writes the fully resolved scenario so that ``load_scenario`` restores it."""
    with open(path, "w") as f:
        yaml.safe_dump(scenario_to_dict(scenario), f, sort_keys=False)

    logger.info(f"Saved scenario file: {path}")
