"""Batch generation of synthetic dysarthric utterances from a manifest.

Manifests are UTF-8 JSON Lines, one utterance per line.  Input entries
carry id/audio/text/speaker/gender; augmented records add the source id,
the severity label, and the (r1, r2) factors actually applied.
"""

from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .audio_io import read_wav, resample, write_wav
from .tempo import WsolaConfig, pertubate_signal

__all__ = [
    "SEVERITIES",
    "PerturbationParams",
    "params_for",
    "ManifestEntry",
    "AugmentRecord",
    "BatchResult",
    "read_manifest",
    "write_records",
    "assign_severities",
    "split_by_gender",
    "run_batch",
]

log = logging.getLogger(__name__)

TARGET_RATE = 16000

GENDERS = ("female", "male", "unknown")

# Severity presets: (speed factor r1, tempo factor r2), mildest to worst.
_SEVERITY_PARAMS = {
    "S1": (1.2, 0.8),
    "S2": (1.4, 0.8),
    "S3": (1.8, 0.4),
    "S4": (2.0, 0.4),
}

SEVERITIES = tuple(_SEVERITY_PARAMS)


@dataclass(frozen=True)
class PerturbationParams:
    """A (speed, tempo) factor pair, optionally tied to a severity label."""

    speed: float
    tempo: float
    severity: str | None = None


def params_for(severity: str) -> PerturbationParams:
    """Look up the preset factors for a severity label S1..S4."""
    try:
        speed, tempo = _SEVERITY_PARAMS[severity]
    except KeyError:
        raise ValueError(f"unknown severity {severity!r}, expected one of {SEVERITIES}") from None
    return PerturbationParams(speed=speed, tempo=tempo, severity=severity)


@dataclass
class ManifestEntry:
    """One healthy utterance: id, audio path, transcript and speaker info."""

    id: str
    audio: str
    text: str = ""
    speaker: str = ""
    gender: str = "unknown"

    def __post_init__(self):
        if not self.id:
            raise ValueError("manifest entry id must be non-empty")
        if not self.audio:
            raise ValueError(f"entry {self.id!r}: audio path must be non-empty")
        if self.gender not in GENDERS:
            raise ValueError(f"entry {self.id!r}: gender {self.gender!r} not in {GENDERS}")

    def to_json(self) -> str:
        return json.dumps(
            {"id": self.id, "audio": self.audio, "text": self.text,
             "speaker": self.speaker, "gender": self.gender},
            ensure_ascii=False,
        )


@dataclass
class AugmentRecord:
    """One synthetic utterance: manifest fields plus augmentation provenance.

    r1 is the speed factor and r2 the tempo factor that produced the audio;
    they always match the preset for `severity`.
    """

    id: str
    audio: str
    text: str
    speaker: str
    gender: str
    source_id: str
    severity: str
    r1: float
    r2: float

    def to_json(self) -> str:
        return json.dumps(
            {"id": self.id, "audio": self.audio, "text": self.text,
             "speaker": self.speaker, "gender": self.gender,
             "source_id": self.source_id, "severity": self.severity,
             "r1": self.r1, "r2": self.r2},
            ensure_ascii=False,
        )


def read_manifest(path) -> list[ManifestEntry]:
    """Load a JSONL manifest, enforcing unique ids."""
    entries = []
    seen = set()
    with open(path, encoding="utf-8") as fin:
        for lineno, line in enumerate(fin, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            entry = ManifestEntry(
                id=str(obj.get("id", "")),
                audio=str(obj.get("audio", "")),
                text=str(obj.get("text", "")),
                speaker=str(obj.get("speaker", "")),
                gender=str(obj.get("gender", "unknown")),
            )
            if entry.id in seen:
                raise ValueError(f"{path}:{lineno}: duplicate id {entry.id!r}")
            seen.add(entry.id)
            entries.append(entry)
    return entries


def write_records(records, path) -> None:
    """Write augment records as JSONL."""
    with open(path, "w", encoding="utf-8") as fout:
        for record in records:
            fout.write(record.to_json())
            fout.write("\n")


def split_by_gender(manifest) -> tuple[list, list, list]:
    """Partition entries into (female, male, unknown) groups."""
    female = [e for e in manifest if e.gender == "female"]
    male = [e for e in manifest if e.gender == "male"]
    unknown = [e for e in manifest if e.gender not in ("female", "male")]
    return female, male, unknown


_MASK64 = (1 << 64) - 1


def _splitmix64(state: int):
    """Deterministic 64-bit stream; identical on every platform."""
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def assign_severities(entry_id: str, severities, replication: int, seed: int) -> list[str]:
    """Draw `replication` severity labels without replacement for one entry.

    The draw depends only on (seed, entry_id), so reordering a manifest
    never changes which severities an utterance receives.
    """
    pool = sorted(severities)
    if replication > len(pool):
        raise ValueError(f"replication {replication} exceeds the {len(pool)} available severities")
    digest = hashlib.sha256(entry_id.encode("utf-8")).digest()
    state = (seed & _MASK64) ^ int.from_bytes(digest[:8], "little")
    stream = _splitmix64(state)
    for i in range(len(pool) - 1, 0, -1):  # Fisher-Yates
        j = next(stream) % (i + 1)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:replication]


@dataclass
class BatchResult:
    """Outcome of run_batch: records in input order plus recorded failures."""

    records: list[AugmentRecord] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)  # (entry id, reason)


def _augment_entry(entry: ManifestEntry, severities: list[str], out_dir: str,
                   wsola: WsolaConfig | None) -> tuple[list[AugmentRecord], list[tuple[str, str]]]:
    records = []
    failures = []
    try:
        wave = read_wav(entry.audio)
        wave = resample(wave, TARGET_RATE)
    except Exception as exc:
        return [], [(entry.id, f"{entry.audio}: {exc}")]
    for severity in severities:
        params = params_for(severity)
        out_path = str(Path(out_dir) / f"{entry.id}_{severity}.wav")
        try:
            perturbed = pertubate_signal(wave, params, wsola)
            write_wav(perturbed, out_path)
        except Exception as exc:
            failures.append((entry.id, f"{out_path}: {exc}"))
            continue
        records.append(AugmentRecord(
            id=f"{entry.id}_{severity}",
            audio=out_path,
            text=entry.text,
            speaker=entry.speaker,
            gender=entry.gender,
            source_id=entry.id,
            severity=severity,
            r1=params.speed,
            r2=params.tempo,
        ))
    return records, failures


def run_batch(manifest, severities, replication: int, seed: int, out_dir,
              jobs: int = 1, wsola: WsolaConfig | None = None) -> BatchResult:
    """Generate `replication` perturbed 16 kHz WAVs per manifest entry.

    Severity levels are drawn without replacement per entry, deterministic
    in (seed, entry id).  Output audio lands in out_dir as
    <id>_<severity>.wav.  Unreadable or unprocessable clips are recorded in
    the result's failures and skipped; the batch never aborts on one file.
    """
    manifest = list(manifest)
    if not manifest:
        raise ValueError("manifest is empty")
    severities = sorted(set(severities))
    for label in severities:
        params_for(label)  # validates
    if not 0 < replication <= len(severities):
        raise ValueError(
            f"replication must be in [1, {len(severities)}], got {replication}"
        )
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    tasks = [
        (entry, assign_severities(entry.id, severities, replication, seed), str(out_dir), wsola)
        for entry in manifest
    ]
    result = BatchResult()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_augment_entry_star, tasks, chunksize=8))
    else:
        outcomes = [_augment_entry(*task) for task in tasks]
    for records, failures in outcomes:
        result.records.extend(records)
        for entry_id, reason in failures:
            log.warning("skipping %s: %s", entry_id, reason)
        result.failures.extend(failures)
    return result


def _augment_entry_star(task):
    return _augment_entry(*task)
