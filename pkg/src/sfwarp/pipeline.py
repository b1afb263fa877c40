"""Augmentation chains: source-filter warping, VTLP, and Griffin-Lim only.

All three modes share the same analysis framing and the same Griffin-Lim
resynthesis, so output length depends only on input length and framing.
Randomness (warp coefficients and, with random phase init, the initial
phase) comes from a generator seeded by ``(seed, utterance_index, copy)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .envelope import SourceFilterPair, decompose, recombine
from .reconstruct import INIT_ORIGINAL, INIT_RANDOM, INIT_ZERO, GriffinLimConfig, griffin_lim
from .signal_io import Waveform
from .stft import ComplexSpectrogram, FramingParams, PowerSpectrogram, power, stft
from .warp import warp_frame, warp_spectrogram

SFW = "sfw"
VTLP = "vtlp"
GL_ONLY = "gl_only"
METHODS = (SFW, VTLP, GL_ONLY)

DEFAULT_SAMPLE_RATE = 16000


def _check_range(name, r):
    lo, hi = r
    if not 0 < lo <= hi:
        raise ValueError(f"{name} must satisfy 0 < lo <= hi, got {lo}:{hi}")
    return (float(lo), float(hi))


@dataclass(frozen=True)
class AugmentConfig:
    method: str = SFW
    alpha_range: tuple = (1.0, 1.3)
    beta_range: tuple = (1.0, 1.3)
    eta_range: tuple = (1.0, 1.2)
    gamma: float = 0.2
    envelope_domain: str = "log"
    framing: FramingParams = field(default_factory=FramingParams)
    gl: GriffinLimConfig = field(default_factory=lambda: GriffinLimConfig(8, INIT_RANDOM))
    seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        for name in ("alpha_range", "beta_range", "eta_range"):
            object.__setattr__(self, name, _check_range(name, getattr(self, name)))
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def with_(self, **changes) -> "AugmentConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class DrawnCoefficients:
    alpha: float | None = None
    beta: float | None = None
    eta: float | None = None


def utterance_rng(seed: int, utterance_index: int, copy: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, utterance_index, copy]))


def draw_coefficients(cfg: AugmentConfig, utterance_index: int, copy: int = 0,
                      rng: np.random.Generator | None = None) -> DrawnCoefficients:
    """Draw one set of warp coefficients for an utterance.

    alpha, beta and eta are always drawn in that order so a given
    ``(seed, utterance_index, copy)`` yields the same values whatever the
    method; fields the method does not use are left as None.
    """
    if rng is None:
        rng = utterance_rng(cfg.seed, utterance_index, copy)
    alpha = float(rng.uniform(*cfg.alpha_range))
    beta = float(rng.uniform(*cfg.beta_range))
    eta = float(rng.uniform(*cfg.eta_range))
    if cfg.method == SFW:
        return DrawnCoefficients(alpha=alpha, beta=beta)
    if cfg.method == VTLP:
        return DrawnCoefficients(eta=eta)
    return DrawnCoefficients()


def check_waveform(w: Waveform, cfg: AugmentConfig) -> None:
    if w.sample_rate != cfg.framing.sample_rate:
        raise ValueError(
            f"sample rate {w.sample_rate} Hz is not supported; resample to "
            f"{cfg.framing.sample_rate} Hz first"
        )
    if len(w) < cfg.framing.win_length:
        raise ValueError(
            f"waveform of {len(w)} samples is shorter than one analysis window "
            f"({cfg.framing.win_length} samples)"
        )


def _resynthesize(target: PowerSpectrogram, original: ComplexSpectrogram,
                  cfg: AugmentConfig, rng) -> Waveform:
    gl = cfg.gl
    if gl.init_phase == INIT_RANDOM and rng is None:
        rng = utterance_rng(cfg.seed, 0)
    phase_init = original if gl.init_phase == INIT_ORIGINAL else None
    return griffin_lim(target, phase_init, gl, rng=rng)


def sfw_spectrogram(p: PowerSpectrogram, alpha: float, beta: float,
                    gamma: float = 0.2, domain: str = "log") -> PowerSpectrogram:
    """Warp source by `alpha` and envelope by `beta`, then recombine."""
    sf = decompose(p, gamma, domain)
    warped = SourceFilterPair(warp_frame(sf.source, alpha), warp_frame(sf.filter, beta),
                              sf.params, sf.epsilon)
    return recombine(warped)


def augment_sfw(w: Waveform, alpha: float, beta: float, cfg: AugmentConfig = AugmentConfig(),
                rng=None) -> Waveform:
    check_waveform(w, cfg)
    s = stft(w, cfg.framing)
    target = sfw_spectrogram(power(s), alpha, beta, cfg.gamma, cfg.envelope_domain)
    return _resynthesize(target, s, cfg, rng)


def augment_vtlp(w: Waveform, eta: float, cfg: AugmentConfig = AugmentConfig(), rng=None) -> Waveform:
    check_waveform(w, cfg)
    s = stft(w, cfg.framing)
    return _resynthesize(warp_spectrogram(power(s), eta), s, cfg, rng)


def augment_gl_only(w: Waveform, cfg: AugmentConfig = AugmentConfig(), rng=None) -> Waveform:
    check_waveform(w, cfg)
    s = stft(w, cfg.framing)
    return _resynthesize(power(s), s, cfg, rng)


def augment(w: Waveform, cfg: AugmentConfig, utterance_index: int = 0,
            copy: int = 0) -> tuple[Waveform, DrawnCoefficients]:
    """Draw coefficients for one utterance copy and apply the configured method."""
    rng = utterance_rng(cfg.seed, utterance_index, copy)
    coeffs = draw_coefficients(cfg, utterance_index, copy, rng=rng)
    if cfg.method == SFW:
        out = augment_sfw(w, coeffs.alpha, coeffs.beta, cfg, rng=rng)
    elif cfg.method == VTLP:
        out = augment_vtlp(w, coeffs.eta, cfg, rng=rng)
    else:
        out = augment_gl_only(w, cfg, rng=rng)
    return out, coeffs


__all__ = [
    "AugmentConfig", "DrawnCoefficients", "METHODS", "SFW", "VTLP", "GL_ONLY",
    "INIT_ORIGINAL", "INIT_RANDOM", "INIT_ZERO", "augment", "augment_gl_only",
    "augment_sfw", "augment_vtlp", "draw_coefficients", "sfw_spectrogram",
    "utterance_rng",
]
