"""dysaug: synthetic dysarthric speech and ASR evaluation tools.

Speed/tempo perturbation of healthy recordings at named severity levels,
manifest-driven batch generation, WER/CER scoring with error breakdown,
and confusion-weighted dictionary text correction.
"""

from .audio_io import (
    UnsupportedCodecError,
    Waveform,
    WavFormatError,
    read_wav,
    resample,
    resample_sequence,
    write_wav,
)
from .correction import (
    Dictionary,
    correct_sentence,
    correct_word,
    load_dictionary,
    profile,
    weighted_jaccard,
)
from .pipeline import (
    SEVERITIES,
    AugmentRecord,
    BatchResult,
    ManifestEntry,
    PerturbationParams,
    assign_severities,
    params_for,
    read_manifest,
    run_batch,
    split_by_gender,
    write_records,
)
from .scoring import (
    Alignment,
    ConfusionMatrix,
    ScoreReport,
    align,
    build_confusion,
    normalize_arabic,
    score,
)
from .speed import SPEED_FACTOR_RANGE, perturb_speed
from .tempo import TEMPO_FACTOR_RANGE, WsolaConfig, perturb_tempo, pertubate_signal

__version__ = "0.1.0"

__all__ = [
    "AugmentRecord",
    "Alignment",
    "BatchResult",
    "ConfusionMatrix",
    "Dictionary",
    "ManifestEntry",
    "PerturbationParams",
    "SEVERITIES",
    "SPEED_FACTOR_RANGE",
    "ScoreReport",
    "TEMPO_FACTOR_RANGE",
    "UnsupportedCodecError",
    "Waveform",
    "WavFormatError",
    "WsolaConfig",
    "align",
    "assign_severities",
    "build_confusion",
    "correct_sentence",
    "correct_word",
    "load_dictionary",
    "normalize_arabic",
    "params_for",
    "perturb_speed",
    "perturb_tempo",
    "pertubate_signal",
    "profile",
    "read_manifest",
    "read_wav",
    "resample",
    "resample_sequence",
    "run_batch",
    "score",
    "split_by_gender",
    "weighted_jaccard",
    "write_records",
    "write_wav",
]
