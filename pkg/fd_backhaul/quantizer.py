"""Quantizer module for the additive quantization noise model (AQNM).

A b-bit ADC is linearized as ``y_q = rho y + n_q`` where ``rho = 1 - kappa(b)``
and ``n_q`` is Gaussian, independent of ``y``, with diagonal covariance
``rho (1 - rho) diag(E[y y^H])``. The expectation is conditioned on the
channel realization. Scalar receivers (a phase-2 MC antenna, a phase-2 SC BS)
are the one-dimensional case.
"""
from dataclasses import dataclass

import numpy as np

from fd_backhaul.utils import ArrayLike, complex_normal


@dataclass(frozen=True, eq=False)
class QuantizedSignal:
    y_q: np.ndarray
    # Diagonal of the QN covariance, one entry per receive antenna.
    qn_covariance: np.ndarray


def qn_diag(rho: float, rx_cov_diag: ArrayLike) -> np.ndarray:
    """Diagonal of the quantization-noise covariance.

    Parameters
    ----------
    rho : float
        Distortion factor ``1 - kappa``, in (0, 1].
    rx_cov_diag : ArrayLike
        Diagonal of the received-signal covariance, conditioned on the channels.

    Returns
    -------
    np.ndarray
        ``rho (1 - rho) rx_cov_diag``.

    Raises
    ------
    ValueError
        If ``rho`` is outside (0, 1] or a covariance entry is negative.
    """
    if not 0.0 < rho <= 1.0:
        raise ValueError(f"Distortion factor rho must lie in (0, 1], got {rho}.")

    cov = np.asarray(rx_cov_diag, dtype=float)
    if np.any(cov < 0):
        raise ValueError("Received-signal covariance entries must be >= 0.")

    return rho * (1.0 - rho) * cov


def quantize(
    y: np.ndarray, rho: float, rx_cov_diag: ArrayLike, rng: np.random.Generator
) -> QuantizedSignal:
    """Applies the AQNM to a received vector.

    ``y`` may carry leading batch axes; its trailing axis must match the
    length of ``rx_cov_diag``.
    """
    y = np.asarray(y)
    cov = np.asarray(rx_cov_diag, dtype=float)
    if y.ndim == 0 or cov.ndim == 0 or y.shape[-cov.ndim :] != cov.shape:
        raise ValueError(
            f"Signal shape {y.shape} does not match covariance shape {cov.shape}."
        )

    nq_cov = qn_diag(rho, cov)
    n_q = complex_normal(rng, y.shape, nq_cov)

    return QuantizedSignal(y_q=rho * y + n_q, qn_covariance=nq_cov)
