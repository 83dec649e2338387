#!/usr/bin/env python3
"""Walk through the four severity presets on a synthetic vowel.

Each severity pairs a speed factor r1 (time-axis compression, pitch moves)
with a tempo factor r2 (duration change, pitch fixed).  Applying both
stages shows how utterance duration shrinks as severity grows.
"""

import tempfile
from pathlib import Path

import numpy as np

from dysaug import SEVERITIES, Waveform, params_for, pertubate_signal, write_wav

RATE = 16000

# a crude sustained vowel: fundamental plus a couple of formant-ish partials
t = np.arange(2 * RATE) / RATE
vowel = (
    0.50 * np.sin(2 * np.pi * 140 * t)
    + 0.25 * np.sin(2 * np.pi * 700 * t)
    + 0.12 * np.sin(2 * np.pi * 1200 * t)
)
healthy = Waveform(0.9 * vowel / np.max(np.abs(vowel)), RATE)

out_dir = Path(tempfile.mkdtemp(prefix="dysaug_demo_"))
print(f"input: {healthy.duration:.2f} s at {RATE} Hz")
print(f"writing perturbed copies into {out_dir}\n")

print(f"{'severity':>8} {'r1':>5} {'r2':>5} {'out duration':>13} {'vs input':>9}")
for label in SEVERITIES:
    params = params_for(label)
    perturbed = pertubate_signal(healthy, params)
    write_wav(perturbed, out_dir / f"vowel_{label}.wav")
    ratio = perturbed.duration / healthy.duration
    print(f"{label:>8} {params.speed:>5.1f} {params.tempo:>5.1f} "
          f"{perturbed.duration:>11.2f} s {ratio:>8.0%}")

print("\nduration scales as r2 / r1: higher severities compress harder.")
