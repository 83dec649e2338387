"""Speed perturbation: uniform time-axis rescaling.

Playing x(t) back as x(factor * t) shortens the signal by the factor and
scales its whole spectrum by the same amount, which is how slow, slurred
speech is sped back up (or healthy speech degraded).  Realized as
band-limited resampling of the sample sequence while keeping the declared
rate fixed, i.e. the classic sox "speed" effect.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .audio_io import Waveform, resample_sequence

__all__ = ["SPEED_FACTOR_RANGE", "MIN_OUTPUT_SAMPLES", "perturb_speed"]

SPEED_FACTOR_RANGE = (0.25, 4.0)

# outputs shorter than one filter phase are useless and break the resampler
MIN_OUTPUT_SAMPLES = 64


def perturb_speed(waveform: Waveform, factor: float) -> Waveform:
    """Rescale the time axis by `factor` at a fixed declared sample rate.

    The output has round(len / factor) samples (within one), and a pure tone
    at frequency f moves to factor * f.  factor > 1 gives faster, higher
    speech; factor < 1 slower, lower speech.
    """
    lo, hi = SPEED_FACTOR_RANGE
    if not lo <= factor <= hi:
        raise ValueError(f"speed factor {factor} outside [{lo}, {hi}]")
    if len(waveform) == 0:
        raise ValueError("cannot speed-perturb an empty waveform")

    ratio = Fraction(factor).limit_denominator(1000)
    up, down = ratio.denominator, ratio.numerator
    if up == down:
        return waveform.copy()

    n_out = -(-len(waveform) * up // down)
    if n_out < MIN_OUTPUT_SAMPLES:
        raise ValueError(
            f"speed factor {factor} on {len(waveform)} samples leaves "
            f"{n_out} samples, below the minimum of {MIN_OUTPUT_SAMPLES}"
        )
    y = resample_sequence(waveform.samples, up, down)
    np.clip(y, -1.0, 1.0, out=y)
    return Waveform(y, waveform.sample_rate)
