"""Synthetic test signals."""

from __future__ import annotations

import numpy as np

from .signal_io import Waveform


def tone(freq: float, duration: float = 1.0, sample_rate: int = 16000, amplitude: float = 0.5) -> Waveform:
    t = np.arange(int(round(duration * sample_rate))) / sample_rate
    return Waveform(amplitude * np.sin(2 * np.pi * freq * t), sample_rate)


def resonance_gain(freqs, formants, sample_rate: int = 16000) -> np.ndarray:
    """Magnitude response of a cascade of two-pole resonators.

    `formants` is a sequence of ``(center_hz, bandwidth_hz)`` pairs.
    """
    z = np.exp(-2j * np.pi * np.asarray(freqs, dtype=np.float64) / sample_rate)
    gain = np.ones(z.shape)
    for fc, bw in formants:
        r = np.exp(-np.pi * bw / sample_rate)
        theta = 2 * np.pi * fc / sample_rate
        denom = 1 - 2 * r * np.cos(theta) * z + r * r * z * z
        gain = gain * (1 - r) / np.abs(denom)
    return gain


def vowel(
    f0: float = 100.0,
    formants=((700.0, 130.0), (1800.0, 150.0)),
    duration: float = 1.0,
    sample_rate: int = 16000,
    peak: float = 0.5,
) -> Waveform:
    """Pulse train at `f0` shaped by fixed resonances, built harmonic by harmonic.

    Every harmonic below Nyquist is a cosine weighted by the resonator
    magnitude at its frequency, which is the steady-state output of a
    zero-phase version of the filter driven by the pulse train.
    """
    n = int(round(duration * sample_rate))
    t = np.arange(n) / sample_rate
    harmonics = f0 * np.arange(1, int((sample_rate / 2 - 1) // f0) + 1)
    amps = resonance_gain(harmonics, formants, sample_rate)
    x = np.zeros(n)
    for f, a in zip(harmonics, amps):
        x += a * np.cos(2 * np.pi * f * t)
    return Waveform(peak * x / np.max(np.abs(x)), sample_rate)


def noise(duration: float = 1.0, sample_rate: int = 16000, seed: int = 0, scale: float = 0.1) -> Waveform:
    rng = np.random.default_rng(seed)
    return Waveform(scale * rng.standard_normal(int(round(duration * sample_rate))), sample_rate)
