"""Griffin-Lim phase reconstruction from a power spectrogram.

Three phase initializations are supported. ``original`` reuses a given
complex spectrogram, ``zero`` starts from zero phase, and ``random`` draws
uniform phases from a caller-supplied generator. With only a few iterations
the initial phase dominates the result: ``original`` keeps the input's
pitch period regardless of the target magnitudes, and ``zero`` locks the
output to the hop period. ``random`` is the one to use when the target has
been warped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_io import Waveform
from .stft import NORM_FLOOR, ComplexSpectrogram, PowerSpectrogram, istft, magnitude_with_phase, stft

INIT_ORIGINAL = "original"
INIT_ZERO = "zero"
INIT_RANDOM = "random"
INIT_MODES = (INIT_ORIGINAL, INIT_ZERO, INIT_RANDOM)


@dataclass(frozen=True)
class GriffinLimConfig:
    iterations: int = 8
    init_phase: str = INIT_ORIGINAL

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.init_phase not in INIT_MODES:
            raise ValueError(f"init_phase must be one of {INIT_MODES}, got {self.init_phase!r}")


def consistency_error(x: Waveform, target: PowerSpectrogram) -> float:
    """Frobenius distance between |stft(x)|^2 and the target power."""
    s = stft(x, target.params).values
    return float(np.linalg.norm(s.real**2 + s.imag**2 - target.values))


def magnitude_error(x: Waveform, target: PowerSpectrogram) -> float:
    """Frobenius distance between |stft(x)| and sqrt(target)."""
    return float(np.linalg.norm(np.abs(stft(x, target.params).values) - np.sqrt(target.values)))


def griffin_lim(
    target: PowerSpectrogram,
    phase_init: ComplexSpectrogram | None = None,
    cfg: GriffinLimConfig = GriffinLimConfig(),
    callback=None,
    rng: np.random.Generator | None = None,
    edge_floor: float = NORM_FLOOR,
) -> Waveform:
    """Estimate a waveform whose STFT power approximates `target`.

    Each iteration resynthesizes with the target magnitude and the current
    phase, then re-analyses to update the phase. The returned waveform is
    the resynthesis after the final phase update, so ``iterations=0`` is a
    plain inverse STFT with the initial phase.

    `callback`, if given, is called with ``(n, waveform)`` for every
    intermediate estimate n = 0..iterations. Those estimates use the exact
    inverse STFT; only the returned waveform applies `edge_floor` (see
    `stft.istft`), so it differs from the last estimate in the outermost
    samples alone. `rng` is only used by the ``random`` init and defaults
    to a generator seeded with 0.
    """
    if cfg.init_phase == INIT_ORIGINAL:
        if phase_init is None:
            raise ValueError("init_phase='original' requires a phase_init spectrogram")
        if phase_init.shape != target.shape:
            raise ValueError(
                f"phase_init shape {phase_init.shape} does not match target {target.shape}"
            )
        current = phase_init
    elif cfg.init_phase == INIT_RANDOM:
        if rng is None:
            rng = np.random.default_rng(0)
        phases = np.exp(2j * np.pi * rng.random(target.shape))
        current = ComplexSpectrogram(phases, target.params)
    else:
        current = ComplexSpectrogram(np.zeros(target.shape, dtype=np.complex128), target.params)

    x = istft(magnitude_with_phase(target, current))
    if callback is not None:
        callback(0, x)
    for n in range(1, cfg.iterations + 1):
        current = stft(x, target.params)
        x = istft(magnitude_with_phase(target, current))
        if callback is not None:
            callback(n, x)
    if edge_floor > 0:
        x = istft(magnitude_with_phase(target, current), norm_floor=edge_floor)
    return x
