"""Dictionary-based text correction with a confusion-weighted Jaccard distance.

Each hypothesized word is replaced by the dictionary word at minimal
distance 1 - sum(min(c_p, c_g)) / sum(max(c_p, c_g)) over per-character
counts.  Without a confusion matrix the counts are plain character
multiplicities; with one, every character spreads its count across the
characters it is confusable with, so likely mix-ups shrink the distance.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .scoring import ConfusionMatrix

__all__ = [
    "Dictionary",
    "load_dictionary",
    "profile",
    "weighted_jaccard",
    "correct_word",
    "correct_sentence",
]


@dataclass(eq=False)
class Dictionary:
    """A correction vocabulary with optional word frequencies."""

    words: frozenset
    freq: dict

    @classmethod
    def from_words(cls, words, freq=None) -> "Dictionary":
        words = frozenset(words)
        if not words:
            raise ValueError("dictionary must contain at least one word")
        return cls(words=words, freq=dict(freq or {}))

    def frequency(self, word: str) -> int:
        return self.freq.get(word, 0)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


def load_dictionary(path) -> Dictionary:
    """Load a word list: one word per line, optional tab-separated count.

    Duplicate lines are merged by summing their counts.
    """
    freq: dict[str, int] = {}
    with open(path, encoding="utf-8") as fin:
        for lineno, line in enumerate(fin, 1):
            line = line.strip()
            if not line:
                continue
            word, _, count = line.partition("\t")
            word = word.strip()
            if not word:
                continue
            if count:
                try:
                    n = int(count)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad frequency {count!r}") from None
                if n < 0:
                    raise ValueError(f"{path}:{lineno}: negative frequency {n}")
            else:
                n = 0
            freq[word] = freq.get(word, 0) + n
    if not freq:
        raise ValueError(f"{path}: no words found")
    return Dictionary(words=frozenset(freq), freq=freq)


def profile(word: str, matrix: ConfusionMatrix | None = None) -> dict[str, float]:
    """Per-character counts of a word, optionally confusion-softened.

    Without a matrix, counts are the integer character multiplicities.
    With one, each occurrence of character c contributes matrix.prob(c, c')
    to the count of every c', so confusable characters share mass.
    Characters outside the matrix alphabet keep their hard count.
    """
    if not word:
        raise ValueError("cannot profile an empty word")
    counts: dict[str, float] = {}
    if matrix is None:
        for c in word:
            counts[c] = counts.get(c, 0) + 1
        return counts
    for c in word:
        if c in matrix:
            for sym, p in matrix.row(c):
                counts[sym] = counts.get(sym, 0.0) + p
        else:
            counts[c] = counts.get(c, 0.0) + 1.0
    return counts


def _profile_distance(pa: dict, pb: dict) -> float:
    minsum = 0.0
    maxsum = 0.0
    for c in pa.keys() | pb.keys():
        a = pa.get(c, 0.0)
        b = pb.get(c, 0.0)
        if a < b:
            minsum += a
            maxsum += b
        else:
            minsum += b
            maxsum += a
    return 1.0 - minsum / maxsum


def weighted_jaccard(word_a: str, word_b: str, matrix: ConfusionMatrix | None = None) -> float:
    """Jaccard distance between the character profiles of two words, in [0, 1].

    With no matrix (or an identity matrix) this is the plain multiset
    Jaccard distance.
    """
    return _profile_distance(profile(word_a, matrix), profile(word_b, matrix))


@functools.lru_cache(maxsize=8)
def _dictionary_profiles(dictionary: Dictionary, matrix: ConfusionMatrix | None):
    # keyed by object identity; both are immutable after load
    return [(word, profile(word, matrix)) for word in sorted(dictionary.words)]


def correct_word(word: str, dictionary: Dictionary,
                 matrix: ConfusionMatrix | None = None) -> str:
    """Replace an out-of-vocabulary word by its nearest dictionary word.

    In-vocabulary words are returned unchanged.  Distance ties are broken
    by higher frequency, then shorter length, then lexicographic order.
    """
    if not len(dictionary):
        raise ValueError("dictionary is empty")
    if word in dictionary:
        return word
    target = profile(word, matrix)
    best = None
    best_key = None
    for candidate, cand_profile in _dictionary_profiles(dictionary, matrix):
        d = _profile_distance(target, cand_profile)
        key = (d, -dictionary.frequency(candidate), len(candidate), candidate)
        if best_key is None or key < best_key:
            best_key = key
            best = candidate
    return best


def correct_sentence(text: str, dictionary: Dictionary,
                     matrix: ConfusionMatrix | None = None) -> str:
    """Correct each purely-alphabetic token of a sentence.

    Tokens containing digits or punctuation pass through untouched;
    whitespace is normalized to single spaces.
    """
    out = []
    for token in text.split():
        if token.isalpha():
            out.append(correct_word(token, dictionary, matrix))
        else:
            out.append(token)
    return " ".join(out)
