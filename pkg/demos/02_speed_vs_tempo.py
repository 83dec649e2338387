#!/usr/bin/env python3
"""Show the core difference between the two perturbation stages.

Speed perturbation rescales the time axis, so a 440 Hz tone played at
factor 2 comes out at 880 Hz and half the length.  Tempo perturbation
(WSOLA) changes only the duration: the tone stays at 440 Hz.
"""

import numpy as np

from dysaug import Waveform, perturb_speed, perturb_tempo

RATE = 16000
N_FFT = 16384

t = np.arange(RATE) / RATE
tone = Waveform(0.8 * np.sin(2 * np.pi * 440 * t), RATE)


def peak_hz(wave):
    spectrum = np.abs(np.fft.rfft(wave.samples, N_FFT))
    return np.argmax(spectrum) * wave.sample_rate / N_FFT


print(f"input tone: {len(tone)} samples, dominant {peak_hz(tone):.1f} Hz\n")

print("speed perturbation (pitch follows the factor):")
for factor in (1.2, 2.0):
    out = perturb_speed(tone, factor)
    print(f"  factor {factor}: {len(out):>6} samples, dominant {peak_hz(out):7.1f} Hz")

print("\ntempo perturbation (pitch pinned by WSOLA):")
for factor in (0.4, 0.8, 2.5):
    out = perturb_tempo(tone, factor)
    print(f"  factor {factor}: {len(out):>6} samples, dominant {peak_hz(out):7.1f} Hz")

print("\nfactors above 1 slow speech down; the presets use fast factors")
print("because sped-up vowels mimic the articulation loss being simulated.")
