"""Mono WAV reading and writing.

Input may be 16-bit PCM (format code 1) or 32-bit IEEE float (format
code 3). Output is always 16-bit PCM at the waveform's sample rate.
"""

from __future__ import annotations

import struct
import warnings
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

WAVE_FORMAT_PCM = 1
WAVE_FORMAT_IEEE_FLOAT = 3
WAVE_FORMAT_EXTENSIBLE = 0xFFFE

_FORMAT_NAMES = {
    WAVE_FORMAT_PCM: "PCM",
    WAVE_FORMAT_IEEE_FLOAT: "IEEE float",
    6: "A-law",
    7: "mu-law",
    WAVE_FORMAT_EXTENSIBLE: "WAVE_FORMAT_EXTENSIBLE",
}


class WavFormatError(ValueError):
    """Raised for WAV files this module does not accept."""


@dataclass(frozen=True)
class Waveform:
    """Mono signal with its sample rate.

    Samples are nominally in [-1, 1]; reconstructed signals may overshoot,
    which `write_wav` handles by peak normalization.
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError(f"expected 1-D samples, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("waveform contains non-finite samples")
        if int(self.sample_rate) != self.sample_rate or self.sample_rate <= 0:
            raise ValueError(f"sample rate must be a positive integer, got {self.sample_rate}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self):
        return len(self.samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def _iter_chunks(data: bytes):
    pos = 12
    while pos + 8 <= len(data):
        chunk_id, size = struct.unpack_from("<4sI", data, pos)
        body = data[pos + 8:pos + 8 + size]
        yield chunk_id, size, body
        # chunks are word aligned
        pos += 8 + size + (size & 1)


def read_wav(path) -> Waveform:
    """Read a mono 16-bit PCM or 32-bit float WAV file.

    16-bit samples are divided by 32768; float samples are returned as is.
    Raises `WavFormatError` for anything else, including multichannel and
    truncated files.
    """
    path = Path(path)
    data = path.read_bytes()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise WavFormatError(f"{path}: not a RIFF/WAVE file")

    fmt = None
    samples = None
    for chunk_id, size, body in _iter_chunks(data):
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise WavFormatError(f"{path}: truncated fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif chunk_id == b"data":
            if fmt is None:
                raise WavFormatError(f"{path}: data chunk before fmt chunk")
            if len(body) < size:
                raise WavFormatError(
                    f"{path}: truncated data chunk ({len(body)} of {size} bytes present)"
                )
            samples = body
            break
    if fmt is None:
        raise WavFormatError(f"{path}: missing fmt chunk")
    if samples is None:
        raise WavFormatError(f"{path}: missing data chunk")

    format_code, channels, sample_rate, _byte_rate, _block_align, bits = fmt
    if format_code == WAVE_FORMAT_PCM and bits == 16:
        dtype, scale = np.dtype("<i2"), 1.0 / 32768.0
    elif format_code == WAVE_FORMAT_IEEE_FLOAT and bits == 32:
        dtype, scale = np.dtype("<f4"), 1.0
    else:
        name = _FORMAT_NAMES.get(format_code, f"format code {format_code}")
        raise WavFormatError(
            f"{path}: unsupported encoding {name} {bits}-bit; "
            "expected 16-bit PCM or 32-bit IEEE float"
        )
    if channels != 1:
        raise WavFormatError(f"{path}: expected 1 channel, found {channels}")
    if len(samples) % dtype.itemsize:
        raise WavFormatError(f"{path}: truncated data chunk (partial sample)")

    x = np.frombuffer(samples, dtype=dtype).astype(np.float64) * scale
    return Waveform(x, sample_rate)


def to_pcm16(samples: np.ndarray) -> np.ndarray:
    """Quantize [-1, 1] floats to int16 with saturation at the +1.0 edge."""
    q = np.round(np.asarray(samples, dtype=np.float64) * 32768.0)
    return np.clip(q, -32768, 32767).astype("<i2")


def write_wav(path, w: Waveform) -> None:
    """Write `w` as 16-bit mono PCM.

    Signals whose peak exceeds 1 are rescaled as a whole so the peak is
    exactly 1, and a `UserWarning` is issued.
    """
    x = w.samples
    peak = float(np.max(np.abs(x))) if len(x) else 0.0
    if peak > 1.0:
        warnings.warn(
            f"{path}: peak amplitude {peak:.4g} exceeds 1, normalizing", stacklevel=2
        )
        x = x / peak
    with open(path, "wb") as fh, wave.open(fh, "wb") as f:
        f.setnchannels(1)
        f.setsampwidth(2)
        f.setframerate(w.sample_rate)
        f.writeframes(to_pcm16(x).tobytes())
