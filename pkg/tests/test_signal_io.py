import struct
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfwarp.signal_io import Waveform, WavFormatError, read_wav, write_wav


def make_wav(path, payload: bytes, fmt_code=1, channels=1, rate=16000, bits=16, declared=None):
    block = channels * bits // 8
    fmt = struct.pack("<HHIIHH", fmt_code, channels, rate, rate * block, block, bits)
    size = len(payload) if declared is None else declared
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt + b"data" + struct.pack("<I", size) + payload
    path.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    return path


def test_read_pcm16_scaling(tmp_path):
    p = make_wav(tmp_path / "a.wav", np.array([0, 16384, -32768], dtype="<i2").tobytes())
    w = read_wav(p)
    assert w.samples.tolist() == [0.0, 0.5, -1.0]
    assert w.sample_rate == 16000


def test_read_float32_unchanged(tmp_path):
    p = make_wav(tmp_path / "f.wav", np.array([0.25, -0.5], dtype="<f4").tobytes(), fmt_code=3, bits=32)
    assert read_wav(p).samples.tolist() == [0.25, -0.5]


def test_stereo_rejected(tmp_path):
    p = make_wav(tmp_path / "s.wav", np.zeros(4, dtype="<i2").tobytes(), channels=2)
    with pytest.raises(WavFormatError, match="expected 1 channel, found 2"):
        read_wav(p)


@pytest.mark.parametrize("fmt_code,bits,name", [(1, 24, "PCM 24-bit"), (3, 64, "IEEE float 64-bit"), (7, 8, "mu-law")])
def test_unsupported_encoding_named(tmp_path, fmt_code, bits, name):
    p = make_wav(tmp_path / "u.wav", b"\x00" * 24, fmt_code=fmt_code, bits=bits)
    with pytest.raises(WavFormatError, match=name):
        read_wav(p)


def test_truncated_data_rejected(tmp_path):
    p = make_wav(tmp_path / "t.wav", b"\x00" * 10, declared=20)
    with pytest.raises(WavFormatError, match="truncated"):
        read_wav(p)


def test_not_riff(tmp_path):
    p = tmp_path / "junk.wav"
    p.write_bytes(b"hello world, not audio")
    with pytest.raises(WavFormatError, match="not a RIFF"):
        read_wav(p)


def test_skips_unknown_chunks(tmp_path):
    fmt = struct.pack("<HHIIHH", 1, 1, 8000, 16000, 2, 16)
    data = np.array([100, -100], dtype="<i2").tobytes()
    body = (b"WAVE" + b"fmt " + struct.pack("<I", 16) + fmt + b"LIST" + struct.pack("<I", 3) + b"abc\x00"
            + b"data" + struct.pack("<I", 4) + data)
    p = tmp_path / "l.wav"
    p.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    w = read_wav(p)
    assert w.sample_rate == 8000
    assert w.samples.tolist() == [100 / 32768, -100 / 32768]


def test_roundtrip_exact_values(tmp_path):
    p = tmp_path / "r.wav"
    write_wav(p, Waveform([0.0, 0.5, -1.0], 16000))
    np.testing.assert_allclose(read_wav(p).samples, [0.0, 0.5, -1.0], atol=1 / 32768)


def test_out_of_range_is_peak_normalized(tmp_path):
    p = tmp_path / "n.wav"
    with pytest.warns(UserWarning, match="normaliz"):
        write_wav(p, Waveform([2.0, -1.0], 16000))
    np.testing.assert_allclose(read_wav(p).samples, [1.0, -0.5], atol=1 / 32768)


def test_empty_waveform(tmp_path):
    p = tmp_path / "e.wav"
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        write_wav(p, Waveform([], 16000))
    assert len(read_wav(p)) == 0


def test_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        write_wav(tmp_path / "missing" / "x.wav", Waveform([0.0], 16000))


def test_waveform_rejects_nonfinite_and_bad_rate():
    with pytest.raises(ValueError):
        Waveform([0.0, np.nan], 16000)
    with pytest.raises(ValueError):
        Waveform([0.0], 0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1.0, 1.0), max_size=200))
def test_roundtrip_within_two_lsb(tmp_path_factory, values):
    p = tmp_path_factory.mktemp("rt") / "x.wav"
    write_wav(p, Waveform(values, 16000))
    got = read_wav(p).samples
    assert len(got) == len(values)
    if values:
        assert np.max(np.abs(got - np.asarray(values))) <= 2 / 32768


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-50.0, 50.0), min_size=1, max_size=100))
def test_write_never_wraps(tmp_path_factory, values):
    p = tmp_path_factory.mktemp("wrap") / "x.wav"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        write_wav(p, Waveform(values, 16000))
    got = read_wav(p).samples
    x = np.asarray(values)
    peak = max(np.max(np.abs(x)), 1.0)
    # no sign flips from integer overflow
    assert np.all(np.abs(got - x / peak) <= 2 / 32768)
