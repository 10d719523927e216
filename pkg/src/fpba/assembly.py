"""Build the output phonetic and run the full word-to-phonetic pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .analogy import CandidateScore, Selection, select_from_buckets
from .errors import LengthMismatch, NoCandidates
from .lexicon import Lexicon, LexiconEntry
from .matcher import matching_buckets
from .text import (
    LetterClass,
    NormalizedWord,
    Transliteration,
    candidate_codes,
    default_table,
    encode_structural,
    normalize,
)

__all__ = ["splice", "skeleton", "phonemize", "PhonemizationResult", "Alternative"]


def splice(
    word: NormalizedWord,
    role_code: str,
    pattern: LexiconEntry,
    table: Transliteration | None = None,
) -> str:
    """Put the pattern's short vowels around the input's own letters.

    >>> from fpba.lexicon import LexiconEntry
    >>> splice(normalize("رنگ"), "777", LexiconEntry.build("سنگ", "sang"))
    'rang'
    """
    table = table or default_table()
    slots = pattern.aligned.slots
    if len(slots) != len(word) or len(role_code) != len(word):
        raise LengthMismatch(len(word), len(slots))
    if pattern.code != role_code:
        raise ValueError(f"pattern {pattern.word!r} has code {pattern.code}, not {role_code}")
    parts = list(pattern.aligned.prefix)
    for g, digit, slot in zip(word.graphemes, role_code, slots):
        parts.append(table.phoneme(g, LetterClass.from_digit(digit)))
        parts.extend(slot.trailing)
    return "".join(parts)


def skeleton(word: NormalizedWord, table: Transliteration | None = None) -> str:
    """Letters' base phonemes only, no short vowels; the degraded fallback."""
    table = table or default_table()
    return "".join(
        table.phoneme(g, LetterClass.from_digit(d)) for g, d in zip(word.graphemes, encode_structural(word))
    )


@dataclass(frozen=True)
class Alternative:
    candidate: CandidateScore
    phonetic: str

    @property
    def pattern(self) -> LexiconEntry:
        return self.candidate.entry

    @property
    def s(self) -> Fraction:
        return self.candidate.s

    def as_dict(self) -> dict:
        return {
            "pattern": self.pattern.word,
            "pattern_phonetic": self.pattern.phonetic,
            "code": self.candidate.role_code,
            "phonetic": self.phonetic,
            "s": float(self.s),
            "s_exact": str(self.s),
        }


class PhonemizationResult:
    def __init__(self, word: NormalizedWord, selection: Selection, table: Transliteration):
        self.word = word
        self.selection = selection
        self._table = table
        best = selection.best
        self.pattern: LexiconEntry = best.entry
        self.role_code: str = best.role_code
        self.s: Fraction = best.s
        self.homograph: bool = selection.homograph
        self.phonetic: str = splice(word, best.role_code, best.entry, table)

    @cached_property
    def alternatives(self) -> tuple[Alternative, ...]:
        return tuple(
            Alternative(c, splice(self.word, c.role_code, c.entry, self._table))
            for c in self.selection.alternatives
        )

    def __repr__(self) -> str:
        return (
            f"PhonemizationResult({self.word.surface!r} -> {self.phonetic!r}, "
            f"pattern={self.pattern.word!r}, s={self.s}, homograph={self.homograph})"
        )

    def as_dict(self, alternatives: bool = True) -> dict:
        d = {
            "word": self.word.surface,
            "phonetic": self.phonetic,
            "pattern": self.pattern.word,
            "pattern_phonetic": self.pattern.phonetic,
            "code": self.role_code,
            "s": float(self.s),
            "s_exact": str(self.s),
            "homograph": self.homograph,
        }
        if alternatives:
            d["alternatives"] = [a.as_dict() for a in self.alternatives]
        return d


def phonemize(lex: Lexicon, raw: str, skeleton_fallback: bool = False) -> PhonemizationResult:
    """Pronounce ``raw`` by analogy with the closest same-coded pattern in ``lex``.

    Raises :class:`NoCandidates` when no pattern shares a code with the word;
    with ``skeleton_fallback`` the exception carries a vowel-less phonetic.
    """
    word = normalize(raw)
    codes = candidate_codes(word)
    buckets = matching_buckets(lex, codes)
    if not buckets:
        raise NoCandidates(
            word.surface, codes, skeleton(word, lex.table) if skeleton_fallback else None
        )
    return PhonemizationResult(word, select_from_buckets(word, buckets), lex.table)
