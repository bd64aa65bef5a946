import hashlib
import json
import math
from typing import Any, Mapping, Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


def db_to_linear(value: ArrayLike) -> ArrayLike:
    """Convert a power ratio in dB to linear units.

    ``-inf`` dB maps to 0 (e.g. a Rayleigh channel has K = -inf dB).
    """
    if np.ndim(value) == 0:
        return float(10.0 ** (float(value) / 10.0))

    return 10.0 ** (np.asarray(value, dtype=float) / 10.0)


def linear_to_db(value: ArrayLike) -> ArrayLike:
    """Convert a linear power ratio to dB (0 maps to ``-inf``)."""
    with np.errstate(divide="ignore"):
        if np.ndim(value) == 0:
            return float(10.0 * np.log10(float(value)))

        return 10.0 * np.log10(np.asarray(value, dtype=float))


def complex_normal(
    rng: np.random.Generator, shape: Tuple[int, ...], variance: ArrayLike = 1.0
) -> np.ndarray:
    """Draw circularly-symmetric complex Gaussian samples.

    Parameters
    ----------
    rng : np.random.Generator
        The random stream.
    shape : Tuple[int, ...]
        Output shape.
    variance : ArrayLike
        Per-entry variance E|x|^2, broadcast against the trailing axes of
        ``shape``. Zero variance yields exact zeros.

    Returns
    -------
    np.ndarray
        Complex array of the requested shape.
    """
    scale = np.sqrt(np.asarray(variance, dtype=float) / 2.0)
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)

    return (real + 1j * imag) * scale


def to_builtin(obj: Any) -> Any:
    """Recursively convert numpy containers and scalars to plain Python types."""
    if isinstance(obj, Mapping):
        return {str(k): to_builtin(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_builtin(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_builtin(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)

    return obj


def replace_inf(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: replace_inf(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [replace_inf(v) for v in obj]
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"

    return obj


def stable_hash(payload: Mapping[str, Any], length: int = 16) -> str:
    """SHA-256 of the canonical (sorted-key) JSON encoding of ``payload``.

    Parameters
    ----------
    payload : Mapping[str, Any]
        Any mapping built from numbers, strings, lists and numpy values.
    length : int, optional
        Number of hex characters kept, by default 16.

    Returns
    -------
    str
        The truncated hex digest.
    """
    canonical = json.dumps(replace_inf(to_builtin(payload)), sort_keys=True)

    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:length]
