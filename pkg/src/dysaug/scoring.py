"""Levenshtein alignment, WER/CER scoring, and confusion estimation.

Alignment uses unit costs with a fixed backtrace preference
(hit > substitute > delete > insert) so that error decompositions and
confusion counts are identical across runs and platforms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HIT",
    "SUBSTITUTE",
    "DELETE",
    "INSERT",
    "Alignment",
    "ScoreReport",
    "ConfusionMatrix",
    "align",
    "score",
    "build_confusion",
    "normalize_arabic",
]

HIT = "hit"
SUBSTITUTE = "substitute"
DELETE = "delete"
INSERT = "insert"


@dataclass
class Alignment:
    """An edit script between a reference and a hypothesis.

    ops is a list of (kind, ref_token, hyp_token); hits and substitutions
    carry both tokens, deletions only the reference token, insertions only
    the hypothesis token.
    """

    ops: list[tuple[str, object, object]]
    distance: int

    def counts(self) -> tuple[int, int, int, int]:
        """(hits, substitutions, deletions, insertions)."""
        hits = subs = dels = inss = 0
        for kind, _, _ in self.ops:
            if kind is HIT:
                hits += 1
            elif kind is SUBSTITUTE:
                subs += 1
            elif kind is DELETE:
                dels += 1
            else:
                inss += 1
        return hits, subs, dels, inss


def align(ref, hyp) -> Alignment:
    """Minimum-edit alignment of two token sequences under unit costs.

    Ties during backtrace prefer hit, then substitute, then delete, then
    insert.
    """
    m, n = len(ref), len(hyp)
    w = n + 1
    # flat (m+1) x (n+1) cost table
    d = list(range(w)) + [0] * (m * w)
    for i in range(1, m + 1):
        d[i * w] = i
    for i in range(1, m + 1):
        ri = ref[i - 1]
        row = i * w
        prev = row - w
        for j in range(1, n + 1):
            if ri == hyp[j - 1]:
                d[row + j] = d[prev + j - 1]
            else:
                best = d[prev + j - 1]
                if d[prev + j] < best:
                    best = d[prev + j]
                if d[row + j - 1] < best:
                    best = d[row + j - 1]
                d[row + j] = best + 1

    i, j = m, n
    ops: list[tuple[str, object, object]] = []
    while i or j:
        cur = d[i * w + j]
        if i and j and ref[i - 1] == hyp[j - 1] and d[(i - 1) * w + j - 1] == cur:
            ops.append((HIT, ref[i - 1], hyp[j - 1]))
            i -= 1
            j -= 1
        elif i and j and d[(i - 1) * w + j - 1] + 1 == cur:
            ops.append((SUBSTITUTE, ref[i - 1], hyp[j - 1]))
            i -= 1
            j -= 1
        elif i and d[(i - 1) * w + j] + 1 == cur:
            ops.append((DELETE, ref[i - 1], None))
            i -= 1
        else:
            ops.append((INSERT, None, hyp[j - 1]))
            j -= 1
    ops.reverse()
    return Alignment(ops=ops, distance=d[m * w + n])


@dataclass
class ScoreReport:
    """Corpus-level error counts; error_rate may exceed 1 when insertions
    outnumber reference tokens."""

    substitutions: int
    insertions: int
    deletions: int
    hits: int
    ref_length: int

    @property
    def error_rate(self) -> float:
        return (self.substitutions + self.insertions + self.deletions) / self.ref_length

    def __add__(self, other: "ScoreReport") -> "ScoreReport":
        return ScoreReport(
            substitutions=self.substitutions + other.substitutions,
            insertions=self.insertions + other.insertions,
            deletions=self.deletions + other.deletions,
            hits=self.hits + other.hits,
            ref_length=self.ref_length + other.ref_length,
        )


# Arabic tatweel plus the combining harakat/tanwin range.
_ARABIC_STRIP = {0x0640} | set(range(0x064B, 0x0653))


def normalize_arabic(text: str) -> str:
    """Strip tatweel and short-vowel diacritics; other characters pass through."""
    return "".join(c for c in text if ord(c) not in _ARABIC_STRIP)


def _tokens(text: str, unit: str):
    if unit == "word":
        return text.split()
    if unit == "char":
        # collapse whitespace runs so formatting noise never counts as errors
        return " ".join(text.split())
    raise ValueError(f"unit must be 'word' or 'char', got {unit!r}")


def score(pairs, unit: str = "word", arabic_normalization: bool = False) -> ScoreReport:
    """Aggregate WER (unit='word') or CER (unit='char') over (ref, hyp) pairs."""
    total = ScoreReport(0, 0, 0, 0, 0)
    for ref_text, hyp_text in pairs:
        if arabic_normalization:
            ref_text = normalize_arabic(ref_text)
            hyp_text = normalize_arabic(hyp_text)
        ref = _tokens(ref_text, unit)
        hyp = _tokens(hyp_text, unit)
        hits, subs, dels, inss = align(ref, hyp).counts()
        total = total + ScoreReport(subs, inss, dels, hits, len(ref))
    if total.ref_length == 0:
        raise ValueError("cannot score: every reference is empty")
    return total


@dataclass(eq=False)
class ConfusionMatrix:
    """Row-stochastic character confusion estimate.

    symbols[0] is the distinguished null symbol "" — its row carries
    insertion probabilities and its column deletion probabilities.
    probabilities[i, j] estimates P(symbol i is realized as symbol j).
    """

    symbols: tuple[str, ...]
    probabilities: np.ndarray
    _index: dict = field(init=False, repr=False)
    _sparse_rows: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.probabilities = np.asarray(self.probabilities, dtype=np.float64)
        k = len(self.symbols)
        if self.probabilities.shape != (k, k):
            raise ValueError(
                f"probability matrix shape {self.probabilities.shape} does not match "
                f"{k} symbols"
            )
        if self.symbols[0] != "":
            raise ValueError('symbols[0] must be the null symbol ""')
        self._index = {s: i for i, s in enumerate(self.symbols)}
        self._sparse_rows = {}

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def prob(self, truth: str, realized: str) -> float:
        return float(self.probabilities[self._index[truth], self._index[realized]])

    def row(self, truth: str):
        """Nonzero (symbol, probability) entries of one row."""
        got = self._sparse_rows.get(truth)
        if got is None:
            values = self.probabilities[self._index[truth]]
            got = tuple(
                (self.symbols[j], float(values[j])) for j in np.nonzero(values)[0]
            )
            self._sparse_rows[truth] = got
        return got

    @classmethod
    def identity(cls, alphabet) -> "ConfusionMatrix":
        """No-confusion matrix over the given characters."""
        symbols = ("",) + tuple(sorted(set(alphabet) - {""}))
        return cls(symbols=symbols, probabilities=np.eye(len(symbols)))

    def to_dict(self) -> dict:
        return {"alphabet": list(self.symbols), "probabilities": self.probabilities.tolist()}

    @classmethod
    def from_dict(cls, obj: dict) -> "ConfusionMatrix":
        return cls(symbols=tuple(obj["alphabet"]), probabilities=np.array(obj["probabilities"]))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fout:
            json.dump(self.to_dict(), fout, ensure_ascii=False)

    @classmethod
    def load(cls, path) -> "ConfusionMatrix":
        with open(path, encoding="utf-8") as fin:
            return cls.from_dict(json.load(fin))


def build_confusion(pairs, smoothing: float = 0.5,
                    arabic_normalization: bool = False) -> ConfusionMatrix:
    """Estimate a character confusion matrix from (ref, hyp) pairs.

    Character-level alignments are accumulated into counts: hits and
    substitutions go to count[ref_char][hyp_char], deletions to the null
    column, insertions to the null row.  Rows are normalized with additive
    smoothing over the observed alphabet, so every row is a distribution
    even for characters never seen as reference.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("cannot build a confusion matrix from no pairs")
    if smoothing <= 0:
        raise ValueError(f"smoothing must be positive to keep rows stochastic, got {smoothing}")

    counts: dict[str, dict[str, float]] = {}
    alphabet: set[str] = set()

    def bump(a: str, b: str):
        row = counts.setdefault(a, {})
        row[b] = row.get(b, 0.0) + 1.0

    for ref_text, hyp_text in pairs:
        if arabic_normalization:
            ref_text = normalize_arabic(ref_text)
            hyp_text = normalize_arabic(hyp_text)
        ref = _tokens(ref_text, "char")
        hyp = _tokens(hyp_text, "char")
        alphabet.update(ref)
        alphabet.update(hyp)
        for kind, ref_char, hyp_char in align(ref, hyp).ops:
            if kind is HIT or kind is SUBSTITUTE:
                bump(ref_char, hyp_char)
            elif kind is DELETE:
                bump(ref_char, "")
            else:
                bump("", hyp_char)

    symbols = ("",) + tuple(sorted(alphabet))
    k = len(symbols)
    matrix = np.zeros((k, k))
    index = {s: i for i, s in enumerate(symbols)}
    for a, row in counts.items():
        for b, c in row.items():
            matrix[index[a], index[b]] = c
    matrix += smoothing
    matrix /= matrix.sum(axis=1, keepdims=True)
    return ConfusionMatrix(symbols=symbols, probabilities=matrix)
