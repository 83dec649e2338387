"""Command-line interface.

Exit codes: 0 full success, 1 any per-file failure (each failure listed on
stderr), 2 usage or configuration error.  Diagnostics go to stderr, data to
files or stdout.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .audio_io import read_wav, write_wav
from .correction import correct_sentence, load_dictionary
from .pipeline import (
    SEVERITIES,
    PerturbationParams,
    params_for,
    read_manifest,
    run_batch,
    write_records,
)
from .scoring import ConfusionMatrix, build_confusion, score
from .speed import SPEED_FACTOR_RANGE
from .tempo import TEMPO_FACTOR_RANGE, pertubate_signal

log = logging.getLogger("dysaug")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dysaug",
        description="Synthesize dysarthric speech from healthy recordings and "
        "evaluate/correct ASR output.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for all random choices")
    parser.add_argument("--quiet", action="store_true", help="suppress progress logging")

    # lets --seed/--quiet also appear after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perturb", parents=[common],
                       help="perturb one WAV at a severity preset or explicit factors")
    p.add_argument("--in", dest="in_path", required=True, metavar="WAV")
    p.add_argument("--out", dest="out_path", required=True, metavar="WAV")
    p.add_argument("--severity", choices=SEVERITIES)
    p.add_argument("--r1", type=float, help="speed factor")
    p.add_argument("--r2", type=float, help="tempo factor")

    p = sub.add_parser("batch", parents=[common],
                       help="augment a whole JSONL manifest")
    p.add_argument("--manifest", required=True, metavar="JSONL")
    p.add_argument("--out-dir", required=True, metavar="DIR")
    p.add_argument("--severities", default=",".join(SEVERITIES),
                   help="comma-separated subset of S1,S2,S3,S4")
    p.add_argument("--replication", type=int, default=2,
                   help="severity draws per utterance")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="parallel workers")

    p = sub.add_parser("confusion", parents=[common],
                       help="estimate a character confusion matrix from ref/hyp files")
    p.add_argument("--refs", required=True, metavar="TXT")
    p.add_argument("--hyps", required=True, metavar="TXT")
    p.add_argument("--out", dest="out_path", required=True, metavar="JSON")

    p = sub.add_parser("correct", parents=[common],
                       help="correct hypothesis text against a dictionary")
    p.add_argument("--dict", dest="dict_path", required=True, metavar="TXT")
    p.add_argument("--confusion", metavar="JSON", help="confusion matrix for weighting")
    p.add_argument("--in", dest="in_path", required=True, metavar="TXT")
    p.add_argument("--out", dest="out_path", required=True, metavar="TXT")

    p = sub.add_parser("score", parents=[common],
                       help="WER/CER with substitution/insertion/deletion breakdown")
    p.add_argument("--refs", required=True, metavar="TXT")
    p.add_argument("--hyps", required=True, metavar="TXT")
    p.add_argument("--unit", choices=("word", "char"), default="word")

    return parser


def _perturb_params(parser: argparse.ArgumentParser, args) -> PerturbationParams:
    has_factors = args.r1 is not None or args.r2 is not None
    if args.severity and has_factors:
        parser.error("--severity and --r1/--r2 are mutually exclusive")
    if args.severity:
        return params_for(args.severity)
    if args.r1 is None or args.r2 is None:
        parser.error("provide either --severity or both --r1 and --r2")
    lo, hi = SPEED_FACTOR_RANGE
    if not lo <= args.r1 <= hi:
        parser.error(f"--r1 must be in [{lo}, {hi}]")
    lo, hi = TEMPO_FACTOR_RANGE
    if not lo <= args.r2 <= hi:
        parser.error(f"--r2 must be in [{lo}, {hi}]")
    return PerturbationParams(speed=args.r1, tempo=args.r2)


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fin:
        return [line.rstrip("\n") for line in fin]


def _read_aligned(refs_path: str, hyps_path: str) -> list[tuple[str, str]]:
    refs = _read_lines(refs_path)
    hyps = _read_lines(hyps_path)
    if len(refs) != len(hyps):
        raise ValueError(
            f"refs and hyps are not line-aligned: {len(refs)} vs {len(hyps)} lines"
        )
    return list(zip(refs, hyps))


def _cmd_perturb(parser, args) -> int:
    params = _perturb_params(parser, args)
    try:
        wave = read_wav(args.in_path)
        out = pertubate_signal(wave, params)
        write_wav(out, args.out_path)
    except Exception as exc:
        print(f"dysaug: {args.in_path}: {exc}", file=sys.stderr)
        return 1
    log.info("wrote %s (%d samples at %d Hz)", args.out_path, len(out), out.sample_rate)
    return 0


def _cmd_batch(parser, args) -> int:
    labels = [s for s in (part.strip() for part in args.severities.split(",")) if s]
    for label in labels:
        if label not in SEVERITIES:
            parser.error(f"unknown severity {label!r}, choose from {', '.join(SEVERITIES)}")
    if not labels:
        parser.error("--severities must name at least one severity")
    if not 0 < args.replication <= len(set(labels)):
        parser.error(f"--replication must be in [1, {len(set(labels))}] for these severities")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        manifest = read_manifest(args.manifest)
        result = run_batch(manifest, labels, args.replication, args.seed,
                           args.out_dir, jobs=args.jobs)
    except (OSError, ValueError) as exc:
        print(f"dysaug: {exc}", file=sys.stderr)
        return 1
    out_manifest = Path(args.out_dir) / "manifest.jsonl"
    write_records(result.records, out_manifest)
    log.info("wrote %d records to %s", len(result.records), out_manifest)
    if result.failures:
        for entry_id, reason in result.failures:
            print(f"dysaug: failed {entry_id}: {reason}", file=sys.stderr)
        return 1
    return 0


def _cmd_confusion(parser, args) -> int:
    try:
        pairs = _read_aligned(args.refs, args.hyps)
        matrix = build_confusion(pairs)
        matrix.save(args.out_path)
    except (OSError, ValueError) as exc:
        print(f"dysaug: {exc}", file=sys.stderr)
        return 1
    log.info("wrote %dx%d confusion matrix to %s",
             len(matrix.symbols), len(matrix.symbols), args.out_path)
    return 0


def _cmd_correct(parser, args) -> int:
    try:
        dictionary = load_dictionary(args.dict_path)
        matrix = ConfusionMatrix.load(args.confusion) if args.confusion else None
        lines = _read_lines(args.in_path)
        with open(args.out_path, "w", encoding="utf-8") as fout:
            for line in lines:
                fout.write(correct_sentence(line, dictionary, matrix))
                fout.write("\n")
    except (OSError, ValueError) as exc:
        print(f"dysaug: {exc}", file=sys.stderr)
        return 1
    log.info("corrected %d lines into %s", len(lines), args.out_path)
    return 0


def _cmd_score(parser, args) -> int:
    try:
        pairs = _read_aligned(args.refs, args.hyps)
        report = score(pairs, unit=args.unit)
    except (OSError, ValueError) as exc:
        print(f"dysaug: {exc}", file=sys.stderr)
        return 1
    print("Sub.\tIns.\tDel.\trate")
    print(f"{report.substitutions}\t{report.insertions}\t{report.deletions}"
          f"\t{report.error_rate:.3f}")
    return 0


_COMMANDS = {
    "perturb": _cmd_perturb,
    "batch": _cmd_batch,
    "confusion": _cmd_confusion,
    "correct": _cmd_correct,
    "score": _cmd_score,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(message)s",
    )
    return _COMMANDS[args.command](parser, args)


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
