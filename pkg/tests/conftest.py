import struct

import numpy as np
import pytest

from dysaug import Waveform


def make_tone(freq=440.0, seconds=1.0, rate=16000, amplitude=0.8):
    t = np.arange(int(round(seconds * rate))) / rate
    return Waveform(amplitude * np.sin(2 * np.pi * freq * t), rate)


def make_chirp(seconds=2.0, rate=16000, f0=150.0, f1=1900.0):
    """Amplitude-modulated linear chirp, a stand-in for voiced speech."""
    t = np.arange(int(round(seconds * rate))) / rate
    phase = f0 * t + (f1 - f0) / (2 * seconds) * t**2
    env = 0.6 + 0.4 * np.sin(2 * np.pi * 3.0 * t)
    return Waveform(0.7 * np.sin(2 * np.pi * phase) * env, rate)


def fft_peak_hz(waveform, n=16384):
    spectrum = np.abs(np.fft.rfft(waveform.samples, n))
    return int(np.argmax(spectrum)) * waveform.sample_rate / n


def snr_db(reference, test):
    reference = np.asarray(reference, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    noise = np.sum((reference - test) ** 2)
    if noise == 0:
        return float("inf")
    return 10.0 * np.log10(np.sum(reference**2) / noise)


def build_wav_bytes(format_tag, channels, rate, bits, payload, *, riff_id=b"RIFF",
                    form=b"WAVE"):
    """Assemble a raw RIFF/WAVE container for reader tests."""
    block_align = channels * bits // 8
    fmt = struct.pack("<HHIIHH", format_tag, channels, rate,
                      rate * block_align, block_align, bits)
    chunks = b"fmt " + struct.pack("<I", len(fmt)) + fmt
    chunks += b"data" + struct.pack("<I", len(payload)) + payload
    if len(payload) % 2:
        chunks += b"\x00"
    return riff_id + struct.pack("<I", 4 + len(chunks)) + form + chunks


def write_pcm16_file(path, samples_int16, rate=16000, channels=1):
    payload = np.asarray(samples_int16, dtype="<i2").tobytes()
    path.write_bytes(build_wav_bytes(1, channels, rate, 16, payload))


def write_float32_file(path, samples, rate=16000, channels=1):
    payload = np.asarray(samples, dtype="<f4").tobytes()
    path.write_bytes(build_wav_bytes(3, channels, rate, 32, payload))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.rsplit("::", 1)[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {name}: {outcome}", flush=True)


@pytest.fixture
def tone_16k():
    return make_tone()
