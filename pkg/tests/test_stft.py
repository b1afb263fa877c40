import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfwarp import reference, synth
from sfwarp.signal_io import Waveform
from sfwarp.stft import (
    ComplexSpectrogram,
    FramingParams,
    PowerSpectrogram,
    hann_window,
    istft,
    magnitude_with_phase,
    power,
    stft,
)

from conftest import interior_rel_error


def test_default_framing(params):
    assert (params.win_length, params.hop_length, params.n_bins) == (400, 160, 257)
    assert params.bin_hz == 31.25


@pytest.mark.parametrize("kwargs", [
    dict(window_ms=40.0),             # 640 samples > 512
    dict(hop_ms=30.0),                # hop longer than window
    dict(hop_ms=0.01),                # hop rounds to 0
    dict(fft_size=511),
])
def test_invalid_framing(kwargs):
    with pytest.raises(ValueError):
        FramingParams(**kwargs)


def test_one_second_shape(params):
    s = stft(Waveform(np.zeros(16000), 16000), params)
    # 1 + floor((16000 - 400) / 160)
    assert s.shape == (98, 257)
    assert np.all(s.values == 0)


def test_shorter_than_window_raises(params):
    with pytest.raises(ValueError, match="shorter than one window"):
        stft(Waveform(np.zeros(399), 16000), params)


def test_sample_rate_mismatch(params):
    with pytest.raises(ValueError):
        stft(Waveform(np.zeros(1000), 8000), params)


def test_periodic_hann():
    w = hann_window(400)
    assert w[0] == 0.0
    assert w[200] == pytest.approx(1.0)
    # periodic: symmetric about n = N/2, not about (N-1)/2
    np.testing.assert_allclose(w[1:], w[1:][::-1], atol=1e-15)


def test_tone_peak_matches_direct_dft(params):
    w = synth.tone(500.0)
    s = stft(w, params)
    assert set(np.argmax(np.abs(s.values), axis=1)) == {16}
    frame = w.samples[:400] * hann_window(400)
    direct = np.array(reference.dft_frame(frame, 512))
    assert int(np.argmax(np.abs(direct))) == 16
    np.testing.assert_allclose(s.values[0], direct, atol=1e-9)


def test_roundtrip_interior(rng, params):
    x = rng.uniform(-1, 1, 16000)
    y = istft(stft(Waveform(x, 16000), params)).samples
    assert len(y) == 97 * 160 + 400
    assert interior_rel_error(x, y) < 1e-6


def test_zero_spectrogram_inverts_to_zero(params):
    s = ComplexSpectrogram(np.zeros((5, 257)), params)
    y = istft(s)
    assert len(y) == 4 * 160 + 400
    assert np.all(y.samples == 0)


def test_single_frame_recovers_segment(rng, params):
    x = rng.uniform(-1, 1, 400)
    y = istft(stft(Waveform(x, 16000), params)).samples
    # sample 0 has zero window weight and carries no information
    assert y[0] == 0.0
    np.testing.assert_allclose(y[1:], x[1:], rtol=1e-9, atol=1e-9)


def test_norm_floor_only_touches_edges(rng, params):
    x = rng.uniform(-1, 1, 8000)
    s = stft(Waveform(x, 16000), params)
    exact = istft(s).samples
    floored = istft(s, norm_floor=0.1).samples
    changed = np.flatnonzero(exact != floored)
    assert changed.size > 0
    assert np.all((changed < 100) | (changed >= len(exact) - 100))


def test_power_definition(params):
    vals = np.zeros((1, 257), dtype=complex)
    vals[0, :3] = [3 + 4j, 0, 3 - 4j]
    p = power(ComplexSpectrogram(vals, params)).values
    assert p[0, 0] == 25.0
    assert p[0, 1] == 0.0
    assert p[0, 2] == p[0, 0]


def test_magnitude_with_phase_cases(params):
    phase = np.zeros((1, 257), dtype=complex)
    phase[0, 0] = 3 + 4j
    phase[0, 2] = 1 - 1j
    pw = np.zeros((1, 257))
    pw[0, :3] = [25.0, 4.0, 0.0]
    out = magnitude_with_phase(PowerSpectrogram(pw, params), ComplexSpectrogram(phase, params)).values
    assert out[0, 0] == pytest.approx(3 + 4j, abs=1e-12)
    assert out[0, 1] == 2 + 0j
    assert out[0, 2] == 0


def test_magnitude_with_phase_shape_mismatch(params):
    with pytest.raises(ValueError, match="mismatch"):
        magnitude_with_phase(PowerSpectrogram(np.ones((2, 257)), params),
                             ComplexSpectrogram(np.ones((3, 257)), params))


def test_spectrogram_validation(params):
    with pytest.raises(ValueError):
        PowerSpectrogram(-np.ones((1, 257)), params)
    with pytest.raises(ValueError):
        PowerSpectrogram(np.ones((1, 256)), params)
    with pytest.raises(ValueError):
        ComplexSpectrogram(np.full((1, 257), np.inf), params)


def test_parseval_per_frame(rng, params):
    x = rng.standard_normal(4000)
    s = stft(Waveform(x, 16000), params)
    p = power(s).values
    # one-sided power: DC and Nyquist once, everything else twice
    weights = np.full(257, 2.0)
    weights[[0, -1]] = 1.0
    spectral = (p * weights).sum(axis=1) / params.fft_size
    frames = np.lib.stride_tricks.sliding_window_view(x, 400)[::160][: s.shape[0]]
    energy = ((frames * hann_window(400)) ** 2).sum(axis=1)
    np.testing.assert_allclose(spectral, energy, rtol=1e-6)


def test_linearity(rng, params):
    x = Waveform(rng.uniform(-1, 1, 3000), 16000)
    a = -2.5
    np.testing.assert_allclose(stft(Waveform(a * x.samples, 16000), params).values,
                               a * stft(x, params).values, atol=1e-10)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1200, 6000), seed=st.integers(0, 2**32 - 1))
def test_roundtrip_property(n, seed):
    x = np.random.default_rng(seed).uniform(-1, 1, n)
    y = istft(stft(Waveform(x, 16000))).samples
    assert interior_rel_error(x, y) < 1e-6
