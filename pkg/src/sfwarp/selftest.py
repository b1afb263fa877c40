"""Built-in property checks on synthetic signals.

Each check returns ``(passed, detail)``. Checks look up the functions they
exercise through their modules at call time, so a patched module is what
gets tested.
"""

from __future__ import annotations

import time

import numpy as np

from . import envelope, reconstruct, reference, stft, synth, warp
from .signal_io import Waveform


def interior_rel_error(x, y, margin):
    n = min(len(x), len(y))
    a = np.asarray(x[margin:n - margin])
    b = np.asarray(y[margin:n - margin])
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(a), 1e-300))


def check_stft_roundtrip():
    rng = np.random.default_rng(1)
    p = stft.FramingParams()
    worst = 0.0
    for _ in range(5):
        w = Waveform(rng.uniform(-1, 1, 32000), 16000)
        y = stft.istft(stft.stft(w, p))
        worst = max(worst, interior_rel_error(w.samples, y.samples, p.win_length))
    return worst < 1e-6, f"max interior relative error {worst:.2e}"


def check_envelope_oracle():
    rng = np.random.default_rng(2)
    frames = rng.exponential(size=(50, 257))
    mismatches = 0
    for gamma in (0.05, 0.2, 0.8):
        got = envelope.estimate_envelope(frames, gamma)
        for row, y in zip(got, frames):
            mismatches += int(np.any(row != np.asarray(reference.envelope_direct(y, gamma))))
    worked = envelope.estimate_envelope(np.array([1.0, 0, 0, 0, 0]), 0.2).tolist()
    ok = mismatches == 0 and worked == [1.0, 0.8, 0.64, 0.512, 0.4096]
    return ok, f"{mismatches} mismatching frames, worked example {worked}"


def check_envelope_dominates():
    rng = np.random.default_rng(3)
    y = rng.exponential(size=(200, 257))
    v = envelope.estimate_envelope(y, 0.2)
    bad = int(np.sum(v < y))
    return bad == 0, f"{bad} bins below the spectrum"


def check_warp_identity():
    rng = np.random.default_rng(4)
    f = rng.exponential(size=(20, 257))
    same = np.array_equal(warp.warp_frame(f, 1.0), f)
    return same, "lambda=1 bit-exact" if same else "lambda=1 changed the input"


def check_warp_oracle():
    rng = np.random.default_rng(5)
    mismatches = 0
    for lam in (0.5, 0.8, 1.0, 1.15, 1.3):
        for f in rng.exponential(size=(20, 257)):
            mismatches += int(np.any(warp.warp_frame(f, lam) != np.asarray(reference.warp_direct(f, lam))))
    a = warp.warp_frame([0, 10, 20, 30], 2.0).tolist()
    b = warp.warp_frame([1, 2, 3, 4], 0.5).tolist()
    ok = mismatches == 0 and a == [0, 5, 10, 15] and b == [1, 3, 4, 4]
    return ok, f"{mismatches} oracle mismatches, worked {a} {b}"


def check_warp_shift():
    w = synth.tone(500.0)
    pw = stft.power(stft.stft(w)).values
    before = int(np.argmax(pw.mean(axis=0)))
    after = int(np.argmax(warp.warp_frame(pw, 1.25).mean(axis=0)))
    return (before, after) == (16, 20), f"peak bin {before} -> {after}"


def check_gl_monotone():
    rng = np.random.default_rng(6)
    p = stft.FramingParams()
    target = stft.PowerSpectrogram(rng.exponential(size=(40, p.n_bins)), p)
    errors = []
    reconstruct.griffin_lim(
        target, None, reconstruct.GriffinLimConfig(8, reconstruct.INIT_ZERO),
        callback=lambda n, x: errors.append(reconstruct.consistency_error(x, target)),
    )
    rises = int(np.sum(np.diff(errors) > 1e-9))
    return rises == 0, f"errors {errors[0]:.3g} -> {errors[-1]:.3g}, {rises} increases"


def check_gl_fixed_point():
    w = synth.noise(duration=1.0, seed=7)
    s = stft.stft(w)
    y = reconstruct.griffin_lim(stft.power(s), s, reconstruct.GriffinLimConfig(8))
    err = interior_rel_error(w.samples, y.samples, s.params.win_length)
    return err < 1e-5, f"interior relative error {err:.2e}"


def check_decompose_identity():
    rng = np.random.default_rng(8)
    p = stft.FramingParams()
    worst = 0.0
    for _ in range(10):
        y = stft.PowerSpectrogram(rng.exponential(size=(30, p.n_bins)), p)
        sf = envelope.decompose(y)
        worst = max(worst, float(np.max(np.abs(envelope.recombine(sf).values - y.values))))
        if sf.source.min() < 0 or sf.source.max() > 1:
            return False, "source outside [0, 1]"
    return worst <= 1e-10, f"max abs error {worst:.2e}"


CHECKS = [
    ("stft round-trip", check_stft_roundtrip),
    ("envelope oracle", check_envelope_oracle),
    ("envelope dominates spectrum", check_envelope_dominates),
    ("warp identity", check_warp_identity),
    ("warp oracle and worked cases", check_warp_oracle),
    ("warp peak shift", check_warp_shift),
    ("griffin-lim monotone", check_gl_monotone),
    ("griffin-lim fixed point", check_gl_fixed_point),
    ("decompose/recombine identity", check_decompose_identity),
]


def run(out=print) -> bool:
    """Run every check, report one line each, and return overall success."""
    all_ok = True
    start = time.perf_counter()
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        out(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    out(f"{'all checks passed' if all_ok else 'some checks FAILED'} "
        f"in {time.perf_counter() - start:.1f} s")
    return all_ok
