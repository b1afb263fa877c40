"""Short-time Fourier analysis and weighted overlap-add synthesis.

Frames are taken without centering or padding of the signal, so the first
and last `win_length` samples are only partially covered. Synthesis uses
the analysis window again and divides by the summed squared window, which
inverts `stft` exactly for any hop no larger than the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .signal_io import Waveform

# Relative floor on the summed squared window for final outputs. Without it,
# samples covered only by a window tail get amplified by ~1/w when the
# spectrogram has been modified. For 25/10 ms Hann it touches the outer ~74
# samples at each end.
NORM_FLOOR = 0.1


@dataclass(frozen=True)
class FramingParams:
    window_ms: float = 25.0
    hop_ms: float = 10.0
    fft_size: int = 512
    sample_rate: int = 16000

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        if self.fft_size < 2 or self.fft_size % 2:
            raise ValueError(f"fft_size must be an even number >= 2, got {self.fft_size}")
        if self.win_length > self.fft_size:
            raise ValueError(
                f"window of {self.win_length} samples exceeds fft_size {self.fft_size}"
            )
        if self.win_length < 1:
            raise ValueError("window must span at least one sample")
        if not 1 <= self.hop_length <= self.win_length:
            raise ValueError(
                f"hop of {self.hop_length} samples must be in [1, {self.win_length}]"
            )

    @property
    def win_length(self) -> int:
        return int(round(self.window_ms * self.sample_rate / 1000.0))

    @property
    def hop_length(self) -> int:
        return int(round(self.hop_ms * self.sample_rate / 1000.0))

    @property
    def n_bins(self) -> int:
        return self.fft_size // 2 + 1

    @property
    def bin_hz(self) -> float:
        return self.sample_rate / self.fft_size

    def n_frames(self, n_samples: int) -> int:
        if n_samples < self.win_length:
            return 0
        return 1 + (n_samples - self.win_length) // self.hop_length

    def output_length(self, n_frames: int) -> int:
        return (n_frames - 1) * self.hop_length + self.win_length


@dataclass(frozen=True)
class ComplexSpectrogram:
    """One-sided STFT, shape (frames, fft_size // 2 + 1)."""

    values: np.ndarray
    params: FramingParams = field(default_factory=FramingParams)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.ndim != 2 or v.shape[1] != self.params.n_bins:
            raise ValueError(
                f"expected shape (frames, {self.params.n_bins}), got {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrogram contains non-finite values")
        object.__setattr__(self, "values", v)

    @property
    def shape(self):
        return self.values.shape


@dataclass(frozen=True)
class PowerSpectrogram:
    """Nonnegative |X|^2 values, shape (frames, fft_size // 2 + 1)."""

    values: np.ndarray
    params: FramingParams = field(default_factory=FramingParams)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != self.params.n_bins:
            raise ValueError(
                f"expected shape (frames, {self.params.n_bins}), got {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("power spectrogram contains non-finite values")
        if np.any(v < 0):
            raise ValueError("power spectrogram contains negative values")
        object.__setattr__(self, "values", v)

    @property
    def shape(self):
        return self.values.shape


def hann_window(length: int) -> np.ndarray:
    """Periodic Hann window (the DFT-even variant, w[0] = 0)."""
    n = np.arange(length)
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * n / length)


def frame_signal(x: np.ndarray, win_length: int, hop_length: int) -> np.ndarray:
    n_frames = 1 + (len(x) - win_length) // hop_length
    return np.lib.stride_tricks.as_strided(
        x,
        shape=(n_frames, win_length),
        strides=(hop_length * x.strides[0], x.strides[0]),
        writeable=False,
    )


def stft(w: Waveform, p: FramingParams | None = None) -> ComplexSpectrogram:
    if p is None:
        p = FramingParams(sample_rate=w.sample_rate)
    if p.sample_rate != w.sample_rate:
        raise ValueError(
            f"framing expects {p.sample_rate} Hz but waveform is {w.sample_rate} Hz"
        )
    if len(w) < p.win_length:
        raise ValueError(
            f"waveform of {len(w)} samples is shorter than one window ({p.win_length})"
        )
    x = np.ascontiguousarray(w.samples, dtype=np.float64)
    frames = frame_signal(x, p.win_length, p.hop_length) * hann_window(p.win_length)
    return ComplexSpectrogram(np.fft.rfft(frames, n=p.fft_size, axis=1), p)


def window_sumsquare(n_frames: int, p: FramingParams) -> np.ndarray:
    win2 = hann_window(p.win_length) ** 2
    out = np.zeros(p.output_length(n_frames))
    for m in range(n_frames):
        start = m * p.hop_length
        out[start:start + p.win_length] += win2
    return out


def istft(s: ComplexSpectrogram, norm_floor: float = 0.0) -> Waveform:
    """Weighted overlap-add inverse of `stft`.

    Output has ``(frames - 1) * hop + win`` samples. With the default
    ``norm_floor=0`` this is the exact least-squares inverse; samples with no
    window coverage at all (the leading zero of the periodic Hann) are 0.
    A positive `norm_floor` clamps the normalizer at that fraction of its
    maximum so the outermost samples fade instead of blowing up.
    """
    p = s.params
    n_frames = s.shape[0]
    if n_frames == 0:
        return Waveform(np.zeros(0), p.sample_rate)
    window = hann_window(p.win_length)
    frames = np.fft.irfft(s.values, n=p.fft_size, axis=1)[:, :p.win_length] * window

    y = np.zeros(p.output_length(n_frames))
    for m in range(n_frames):
        start = m * p.hop_length
        y[start:start + p.win_length] += frames[m]

    norm = window_sumsquare(n_frames, p)
    if norm_floor > 0:
        y /= np.maximum(norm, norm_floor * norm.max())
    else:
        covered = norm > 0
        y[covered] /= norm[covered]
        y[~covered] = 0.0
    return Waveform(y, p.sample_rate)


def power(s: ComplexSpectrogram) -> PowerSpectrogram:
    v = s.values
    return PowerSpectrogram(v.real**2 + v.imag**2, s.params)


def magnitude_with_phase(p: PowerSpectrogram, phase_source: ComplexSpectrogram) -> ComplexSpectrogram:
    """Combine sqrt(power) with the unit phase of another spectrogram.

    Zero-valued phase-source entries take phase 0.
    """
    if p.shape != phase_source.shape:
        raise ValueError(
            f"shape mismatch: power {p.shape} vs phase source {phase_source.shape}"
        )
    z = phase_source.values
    mag = np.abs(z)
    unit = np.ones_like(z)
    nz = mag > 0
    unit[nz] = z[nz] / mag[nz]
    return ComplexSpectrogram(np.sqrt(p.values) * unit, p.params)
