"""Similarity scoring between an input word and same-coded patterns.

Each letter comparison is a one-input neuron: the pattern letter's code point
enters with weight 1, the bias is the negated input letter, and the transfer
function ``floor(exp(-|n|))`` fires only when the two letters are identical.
Stacking the firings for every pattern gives a 0/1 match matrix; multiplying
it by the per-letter weights (1 for consonants, word length for long vowels)
and dividing by the weight total yields the similarity ``s`` in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import LengthMismatch, NoCandidates
from .lexicon import Bucket, LexiconEntry
from .text import NormalizedWord

__all__ = [
    "NEURON_WEIGHT",
    "impulse",
    "neuron",
    "match_vector",
    "WeightVector",
    "letter_weights",
    "CandidateScore",
    "score",
    "Selection",
    "rank_and_select",
    "network_output",
    "select_from_buckets",
]

NEURON_WEIGHT = 1


def impulse(n: int) -> int:
    """``floor(exp(-|n|))``: 1 at zero, 0 for every other integer."""
    return math.floor(math.exp(-abs(n)))


def neuron(pattern_letter: int, input_letter: int) -> int:
    n = NEURON_WEIGHT * pattern_letter - input_letter
    return impulse(n)


def match_vector(word: NormalizedWord, pattern: NormalizedWord) -> tuple[int, ...]:
    if len(word) != len(pattern):
        raise LengthMismatch(len(word), len(pattern))
    return tuple(neuron(p, x) for p, x in zip(pattern.codepoints, word.codepoints))


@dataclass(frozen=True, slots=True)
class WeightVector:
    weights: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.weights)


def letter_weights(word: NormalizedWord, role_code: str) -> WeightVector:
    """Weight 1 per consonant and ``len(word)`` per long vowel, as read under ``role_code``."""
    if len(role_code) != len(word):
        raise LengthMismatch(len(word), len(role_code))
    return _weights(role_code)


@lru_cache(maxsize=4096)
def _weights(role_code: str) -> WeightVector:
    L = len(role_code)
    return WeightVector(tuple(1 if d == "7" else L for d in role_code))


@lru_cache(maxsize=4096)
def _weight_array(role_code: str) -> tuple[np.ndarray, int]:
    w = _weights(role_code)
    return np.asarray(w.weights, dtype=np.int64), w.total


@dataclass(frozen=True, slots=True)
class CandidateScore:
    entry: LexiconEntry
    role_code: str
    match: tuple[int, ...]
    matched_weight: int
    total: int

    @property
    def s(self) -> Fraction:
        return Fraction(self.matched_weight, self.total)

    @property
    def frequency(self) -> int:
        return self.entry.frequency

    @property
    def sort_key(self) -> tuple:
        return (-self.s, *self.entry.sort_key)


def score(word: NormalizedWord, role_code: str, entry: LexiconEntry) -> CandidateScore:
    if entry.code != role_code:
        raise ValueError(f"entry {entry.word!r} has code {entry.code}, not {role_code}")
    a = match_vector(word, entry.surface)
    w = letter_weights(word, role_code)
    matched = sum(wi * ai for wi, ai in zip(w.weights, a))
    return CandidateScore(entry, role_code, a, matched, w.total)


class Selection:
    """Best candidate, homograph flag, and the rest in rank order.

    ``alternatives`` is built on first access; batch callers that only need
    the winner never pay for it.
    """

    def __init__(
        self,
        best: CandidateScore,
        homograph: bool,
        rest: Callable[[], Sequence[CandidateScore]],
        size: int,
    ):
        self.best = best
        self.homograph = homograph
        self._rest = rest
        self.size = size

    @cached_property
    def alternatives(self) -> tuple[CandidateScore, ...]:
        return tuple(self._rest())

    @property
    def ranked(self) -> tuple[CandidateScore, ...]:
        return (self.best, *self.alternatives)

    def __repr__(self) -> str:
        return (
            f"Selection(best={self.best.entry.word!r}, s={self.best.s}, "
            f"homograph={self.homograph}, n={self.size})"
        )


def rank_and_select(word: NormalizedWord, scored: Sequence[CandidateScore]) -> Selection:
    """Order by s (high first), then frequency (high first), then surface.

    Ties on s at the top raise the homograph flag; frequency decides the default.
    """
    if not scored:
        raise NoCandidates(word.surface)
    ordered = sorted(scored, key=lambda c: c.sort_key)
    homograph = len(ordered) > 1 and ordered[0].s == ordered[1].s
    return Selection(ordered[0], homograph, lambda: ordered[1:], len(ordered))


def network_output(word: NormalizedWord, bucket: Bucket) -> np.ndarray:
    """The (patterns x letters) 0/1 match matrix for a whole bucket at once."""
    if bucket.letters.shape[1] != len(word):
        raise LengthMismatch(len(word), bucket.letters.shape[1])
    n = NEURON_WEIGHT * bucket.letters - np.asarray(word.codepoints, dtype=np.int64)
    return np.floor(np.exp(-np.abs(n))).astype(np.int64)


def select_from_buckets(word: NormalizedWord, buckets: Sequence[Bucket]) -> Selection:
    """Score every entry of every bucket and select, without per-entry objects.

    Scores from buckets with different codes have different denominators, so
    they are compared on a common denominator to keep ties exact.
    """
    if not buckets:
        raise NoCandidates(word.surface)
    parts = []
    for b in buckets:
        weights, total = _weight_array(b.code)
        a = network_output(word, b)
        parts.append((b, a, a @ weights, total))
    if len(parts) == 1:
        b, a, matched, total = parts[0]
        scaled = matched
        owner = np.zeros(len(b), dtype=np.int64)
        row = np.arange(len(b))
        rank = b.rank
    else:
        common = math.lcm(*(p[3] for p in parts))
        scaled = np.concatenate([p[2] * (common // p[3]) for p in parts])
        owner = np.concatenate([np.full(len(p[0]), i) for i, p in enumerate(parts)])
        row = np.concatenate([np.arange(len(p[0])) for p in parts])
        rank = np.concatenate([p[0].rank for p in parts])
    order = np.lexsort((rank, -scaled))

    def build(k: int) -> CandidateScore:
        b, a, matched, total = parts[owner[k]]
        r = row[k]
        return CandidateScore(b.entries[r], b.code, tuple(a[r].tolist()), int(matched[r]), total)

    homograph = len(order) > 1 and scaled[order[0]] == scaled[order[1]]
    return Selection(
        build(order[0]), bool(homograph), lambda: [build(k) for k in order[1:]], len(order)
    )
