"""Linear frequency warping of spectral vectors.

Output bin i reads the input at fractional position u = i / lam and
interpolates linearly between bins floor(u) and floor(u) + 1. Positions
beyond the top bin (only reachable for lam < 1) read a fill value: the mean
of the uppermost 2% of bins, rounded up to at least one bin.
"""

from __future__ import annotations

import numpy as np

from .stft import PowerSpectrogram


def edge_width(n_bins: int) -> int:
    """Number of upper bins averaged for the fill value: ceil(0.02 * n_bins)."""
    return -(-2 * n_bins // 100)


def edge_fill(f: np.ndarray) -> np.ndarray:
    """Mean of the top 2% bins along the last axis (keeps that axis as size 1)."""
    k = edge_width(f.shape[-1])
    return f[..., -k:].mean(axis=-1, keepdims=True)


def _check_lambda(lam):
    if not lam > 0:
        raise ValueError(f"warping coefficient must be positive, got {lam}")


def warp_frame(f, lam: float) -> np.ndarray:
    """Warp a bins-length vector (or a stack of them) by coefficient `lam`.

    ``lam > 1`` moves content toward higher bins. ``lam == 1`` returns the
    input unchanged.
    """
    _check_lambda(lam)
    f = np.asarray(f, dtype=np.float64)
    if np.any(f < 0) or not np.all(np.isfinite(f)):
        raise ValueError("input must be finite and nonnegative")
    n_bins = f.shape[-1]
    if n_bins == 0:
        return f.copy()
    top = n_bins - 1

    i = np.arange(n_bins, dtype=np.float64)
    u = i / lam
    k = np.floor(u)
    t = u - k
    k = k.astype(np.int64)

    fill = edge_fill(f)
    # pad two fill columns so k + 1 <= top + 2 always indexes something
    padded = np.concatenate([f, fill, fill], axis=-1)
    beyond = k > top
    k_lo = np.minimum(k, top + 1)
    lo = padded[..., k_lo]
    hi = padded[..., k_lo + 1]
    out = lo * (1 - t) + hi * t
    # exact grid hits skip the second term entirely
    exact = (t == 0) & ~beyond
    out[..., exact] = lo[..., exact]
    out[..., beyond] = np.broadcast_to(fill, out[..., beyond].shape)
    return out


def warp_spectrogram(p: PowerSpectrogram, lam: float) -> PowerSpectrogram:
    """Warp every frame of `p` with the same coefficient."""
    return PowerSpectrogram(warp_frame(p.values, lam), p.params)
