"""Channel module for drawing Rician channels, MMSE estimates and interference links."""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from fd_backhaul.constants import Phase
from fd_backhaul.params import (
    EstimationStats,
    FadingProfile,
    InterferenceProfile,
    SystemConfig,
)
from fd_backhaul.utils import ArrayLike, complex_normal


def steering_vector(n: int, theta: float) -> np.ndarray:
    """Half-wavelength ULA response ``exp(-j (m - 1) pi sin(theta))``, m = 1..n."""
    if n < 1:
        raise ValueError(f"Antenna count must be >= 1, got {n}.")

    return np.exp(-1j * np.arange(n) * np.pi * np.sin(theta))


def steering_matrix(n: int, thetas: np.ndarray) -> np.ndarray:
    """Stacks ``steering_vector(n, theta)`` column-wise, shape (n, len(thetas))."""
    if n < 1:
        raise ValueError(f"Antenna count must be >= 1, got {n}.")

    return np.exp(-1j * np.outer(np.arange(n), np.pi * np.sin(thetas)))


def dirichlet_sq(n: int, theta_k: ArrayLike, theta_j: ArrayLike) -> ArrayLike:
    """Squared magnitude of the inner product of two ULA steering vectors.

    Parameters
    ----------
    n : int
        Number of antennas.
    theta_k, theta_j : ArrayLike
        Angles in radians; arrays broadcast against each other.

    Returns
    -------
    ArrayLike
        ``(sin(n x) / sin(x)) ** 2`` with ``x = pi/2 (sin theta_k - sin theta_j)``,
        i.e. ``|a_k^H a_j|^2``. Coincident effective angles give ``n ** 2``.
    """
    if n < 1:
        raise ValueError(f"Antenna count must be >= 1, got {n}.")

    x = np.pi / 2 * (np.sin(theta_k) - np.sin(theta_j))
    den = np.sin(x)
    coincident = np.abs(den) < 1e-12
    safe = np.where(coincident, 1.0, den)
    value = np.where(coincident, float(n) ** 2, (np.sin(n * x) / safe) ** 2)

    if np.ndim(value) == 0:
        return float(value)

    return value


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One joint draw of every channel of a phase.

    Arrays may carry leading batch axes. Column ``k`` of ``H_hat``/``E`` is the
    estimate/error of ``h_k`` and column ``k`` of ``G_hat``/``D`` that of
    ``g_k``. ``h_k`` spans the MC array (``M_rx`` antennas in phase 1,
    ``M_tx`` in phase 2) and ``g_k`` the SC-k array (``N_rx`` / ``N_tx``).

    Phase 1 interference: ``Q`` (M_rx x M_tx) MC SI, ``q_s[:, k]`` SI at SC-k
    and ``q_c[:, k, j]`` the link from SC-j into SC-k. Phase 2 interference:
    row ``z_m[k]`` (1 x M_tx) into MC receive antenna k, ``z_s[k]`` and
    ``z_c[k, j]`` (1 x N_tx) into the receive antenna of SC-k.
    """

    phase: Phase
    H_hat: np.ndarray
    E: np.ndarray
    G_hat: np.ndarray
    D: np.ndarray
    Q: Optional[np.ndarray] = None
    q_s: Optional[np.ndarray] = None
    q_c: Optional[np.ndarray] = None
    z_m: Optional[np.ndarray] = None
    z_s: Optional[np.ndarray] = None
    z_c: Optional[np.ndarray] = None

    @property
    def H(self) -> np.ndarray:
        return self.H_hat + self.E

    @property
    def G(self) -> np.ndarray:
        return self.G_hat + self.D


def los_mean(n: int, gain: np.ndarray, K: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Deterministic part ``sqrt(gain K / (K + 1)) a(theta)`` of every link, (n, S)."""
    return steering_matrix(n, thetas) * np.sqrt(gain * K / (K + 1.0))


def array_sizes(cfg: SystemConfig, phase: Phase) -> Tuple[int, int]:
    """Massive array sizes ``(M, N)`` of the MC and SC BSs in ``phase``."""
    if phase == 1:
        return cfg.M_rx, cfg.N_rx

    return cfg.M_tx, cfg.N_tx


def draw_realization(
    cfg: SystemConfig,
    fading: FadingProfile,
    stats: EstimationStats,
    interf: InterferenceProfile,
    phase: Phase,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> ChannelRealization:
    """Draws every channel, estimate, error and interference link of ``phase``.

    Estimates are synthesized from their exact MMSE distribution: the LoS mean
    plus ``CN(0, beta_hat)`` per entry, with independent ``CN(0, beta_tilde)``
    errors (likewise ``alpha_hat``/``alpha_tilde`` for ``g_k``).

    Parameters
    ----------
    cfg, fading, stats, interf
        The scenario and its estimation statistics.
    phase : Phase
        Selects antenna roles, angles and interference variances.
    rng : np.random.Generator
        Seeded stream; the draw order is fixed so equal seeds give
        bit-identical realizations.
    size : Optional[int]
        Number of independent realizations stacked on a leading axis; None
        returns a single realization without the batch axis.

    Raises
    ------
    RoleMismatchError
        If the antenna counts of ``cfg`` do not fit ``phase``.
    """
    cfg.check_roles(phase)

    lead: Tuple[int, ...] = () if size is None else (size,)
    S = cfg.S
    M, N = array_sizes(cfg, phase)
    theta_h = fading.aoa_m if phase == 1 else fading.aoa2_s
    theta_g = fading.aoa_s if phase == 1 else fading.aoa2_m

    H_hat = los_mean(M, fading.beta, fading.K_m, theta_h) + complex_normal(
        rng, lead + (M, S), stats.beta_hat
    )
    E = complex_normal(rng, lead + (M, S), stats.beta_tilde)
    G_hat = los_mean(N, fading.alpha, fading.K_s, theta_g) + complex_normal(
        rng, lead + (N, S), stats.alpha_hat
    )
    D = complex_normal(rng, lead + (N, S), stats.alpha_tilde)

    if phase == 1:
        return ChannelRealization(
            phase=phase,
            H_hat=H_hat,
            E=E,
            G_hat=G_hat,
            D=D,
            Q=complex_normal(rng, lead + (M, cfg.M_tx), interf.sigma2_m),
            q_s=complex_normal(rng, lead + (N, S), interf.sigma2_s),
            q_c=complex_normal(rng, lead + (N, S, S), interf.sigma2_c),
        )

    return ChannelRealization(
        phase=phase,
        H_hat=H_hat,
        E=E,
        G_hat=G_hat,
        D=D,
        z_m=complex_normal(rng, lead + (S, M), interf.zeta2_m[:, None]),
        z_s=complex_normal(rng, lead + (S, N), interf.zeta2_s[:, None]),
        z_c=complex_normal(rng, lead + (S, S, N), interf.zeta2_c[:, :, None]),
    )
