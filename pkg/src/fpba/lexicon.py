"""Pattern dictionary: TSV ingestion, phonetic alignment, indexing by structural code."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping, TextIO

import numpy as np

from .errors import AlignmentFailure, FormatError, FpbaError
from .text import (
    SHORT_VOWELS,
    LetterClass,
    NormalizedWord,
    Transliteration,
    allowed_roles,
    default_table,
    normalize,
)

log = logging.getLogger(__name__)

__all__ = [
    "Slot",
    "AlignedPhonetic",
    "LexiconEntry",
    "Lexicon",
    "LoadReport",
    "align_phonetic",
    "load_lexicon",
    "read_lexicon",
    "bundled_lexicon",
    "BUNDLED_LEXICON",
]

BUNDLED_LEXICON = "data/lexicon.tsv"


@dataclass(frozen=True, slots=True)
class Slot:
    anchor: str
    role: LetterClass
    trailing: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class AlignedPhonetic:
    """A phonetic string cut into one slot per letter.

    Each slot holds the letter's own phoneme (the anchor) followed by the short
    vowels pronounced after it.  Concatenating ``prefix`` and every slot gives
    back the original string.
    """

    prefix: tuple[str, ...]
    slots: tuple[Slot, ...]

    @property
    def phonetic(self) -> str:
        parts = list(self.prefix)
        for s in self.slots:
            parts.append(s.anchor)
            parts.extend(s.trailing)
        return "".join(parts)

    @property
    def code(self) -> str:
        return "".join(s.role.digit for s in self.slots)

    def __len__(self) -> int:
        return len(self.slots)


def align_phonetic(
    surface: NormalizedWord, phonetic: str, table: Transliteration | None = None
) -> AlignedPhonetic:
    """Anchor each letter of ``surface`` inside ``phonetic``, left to right.

    Ambiguous letters try their vowel phoneme before their consonant one.
    Anything between two anchors, or after the last, has to be a short vowel.
    """
    table = table or default_table()
    try:
        symbols = table.tokenize(phonetic)
    except ValueError as exc:
        raise AlignmentFailure(surface.surface, phonetic, 0, str(exc)) from None
    n = len(symbols)

    def skip(j: int) -> int:
        while j < n and symbols[j] in SHORT_VOWELS:
            j += 1
        return j

    start = j = skip(0)
    slots = []
    for k, g in enumerate(surface.graphemes):
        found = symbols[j] if j < n else None
        for role in allowed_roles(g):
            anchor = table.phoneme(g, role)
            if found == anchor:
                break
        else:
            expected = " or ".join(repr(table.phoneme(g, r)) for r in allowed_roles(g))
            got = repr(found) if found is not None else "end of string"
            raise AlignmentFailure(surface.surface, phonetic, k, f"expected {expected} for {g.char!r}, found {got}")
        nxt = skip(j + 1)
        slots.append(Slot(anchor, role, tuple(symbols[j + 1 : nxt])))
        j = nxt
    if j != n:
        raise AlignmentFailure(
            surface.surface, phonetic, len(surface) - 1, f"{symbols[j]!r} after the last letter is not a short vowel"
        )
    return AlignedPhonetic(tuple(symbols[:start]), tuple(slots))


@dataclass(frozen=True, slots=True)
class LexiconEntry:
    surface: NormalizedWord
    phonetic: str
    aligned: AlignedPhonetic
    gram_kind: str = ""
    frequency: int = 0
    code: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.aligned) != len(self.surface):
            raise ValueError(f"{self.surface.surface!r}: {len(self.aligned)} slots for {len(self.surface)} letters")
        object.__setattr__(self, "code", self.aligned.code)

    @property
    def word(self) -> str:
        return self.surface.surface

    @property
    def sort_key(self) -> tuple[int, str, str]:
        return (-self.frequency, self.surface.surface, self.phonetic)

    @classmethod
    def build(
        cls,
        surface: str,
        phonetic: str,
        gram_kind: str = "",
        frequency: int = 0,
        table: Transliteration | None = None,
    ) -> "LexiconEntry":
        word = normalize(surface)
        return cls(word, phonetic, align_phonetic(word, phonetic, table), gram_kind, frequency)


@dataclass(frozen=True)
class Bucket:
    """All entries sharing one code, plus their letters as an (n, L) matrix."""

    code: str
    entries: tuple[LexiconEntry, ...]
    letters: np.ndarray
    rank: np.ndarray

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class Rejected:
    line_no: int
    line: str
    reason: str
    kind: str


@dataclass
class LoadReport:
    loaded: int = 0
    rejected: list[Rejected] = field(default_factory=list)
    duplicates: list[Rejected] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.rejected and not self.duplicates


class Lexicon:
    """Immutable pattern store indexed by structural code.

    Entries are kept in one global order, descending frequency then surface
    then phonetic; every bucket inherits it.
    """

    def __init__(
        self,
        entries: Iterable[LexiconEntry],
        table: Transliteration | None = None,
        report: LoadReport | None = None,
    ):
        ordered = sorted(entries, key=lambda e: e.sort_key)
        seen = set()
        for e in ordered:
            key = (e.surface.surface, e.phonetic)
            if key in seen:
                raise ValueError(f"duplicate entry {key}")
            seen.add(key)
        self.table = table or default_table()
        self.report = report or LoadReport(loaded=len(ordered))
        self.entries: tuple[LexiconEntry, ...] = tuple(ordered)
        self._rank = {id(e): i for i, e in enumerate(ordered)}
        grouped: dict[str, list[LexiconEntry]] = {}
        for e in ordered:
            grouped.setdefault(e.code, []).append(e)
        self._buckets = {code: self._make_bucket(code, es) for code, es in grouped.items()}

    def _make_bucket(self, code: str, entries: list[LexiconEntry] | tuple[LexiconEntry, ...]) -> Bucket:
        letters = np.array([e.surface.codepoints for e in entries], dtype=np.int64)
        letters = letters.reshape(len(entries), len(code))
        rank = np.array([self._rank[id(e)] for e in entries], dtype=np.int64)
        return Bucket(code, tuple(entries), letters, rank)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"<Lexicon {len(self)} entries, {len(self._buckets)} codes>"

    @property
    def by_code(self) -> Mapping[str, tuple[LexiconEntry, ...]]:
        return {code: b.entries for code, b in self._buckets.items()}

    def bucket(self, code: str) -> Bucket | None:
        return self._buckets.get(code)

    def lookup(self, code: str) -> tuple[LexiconEntry, ...]:
        b = self._buckets.get(code)
        return b.entries if b else ()

    def codes(self) -> list[str]:
        return sorted(self._buckets)

    def without(self, entry: LexiconEntry) -> "Lexicon":
        """A copy missing ``entry``; only its bucket is rebuilt."""
        clone = object.__new__(Lexicon)
        clone.table = self.table
        clone.report = self.report
        clone.entries = tuple(e for e in self.entries if e is not entry)
        clone._rank = self._rank
        clone._buckets = dict(self._buckets)
        old = self._buckets.get(entry.code)
        if old is None or not any(e is entry for e in old.entries):
            raise KeyError(entry.word)
        remaining = tuple(e for e in old.entries if e is not entry)
        if remaining:
            clone._buckets[entry.code] = clone._make_bucket(entry.code, remaining)
        else:
            del clone._buckets[entry.code]
        return clone


def _parse_row(line_no: int, line: str, table: Transliteration) -> LexiconEntry:
    cols = line.split("\t")
    if not 2 <= len(cols) <= 4:
        raise FormatError(line_no, f"expected 2 to 4 tab-separated columns, got {len(cols)}")
    surface, phonetic = cols[0].strip(), cols[1].strip()
    gram_kind = cols[2].strip() if len(cols) > 2 else ""
    frequency = 0
    if len(cols) > 3 and cols[3].strip():
        try:
            frequency = int(cols[3])
        except ValueError:
            raise FormatError(line_no, f"bad frequency {cols[3].strip()!r}") from None
        if frequency < 0:
            raise FormatError(line_no, f"negative frequency {frequency}")
    if not phonetic:
        raise FormatError(line_no, "empty phonetic")
    return LexiconEntry.build(surface, phonetic, gram_kind, frequency, table)


def load_lexicon(
    source: TextIO | Iterable[str], table: Transliteration | None = None, strict: bool = False
) -> Lexicon:
    """Read a lexicon TSV (surface, phonetic, gram_kind, frequency).

    Bad rows are skipped and listed in ``lexicon.report``; with ``strict`` the
    first bad row raises instead.  Repeated (surface, phonetic) pairs keep the
    first occurrence.
    """
    table = table or default_table()
    report = LoadReport()
    entries = []
    seen: set[tuple[str, str]] = set()
    for line_no, line in enumerate(source, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            entry = _parse_row(line_no, line, table)
        except FpbaError as exc:
            if strict:
                raise
            report.rejected.append(Rejected(line_no, line, str(exc), type(exc).__name__))
            continue
        key = (entry.word, entry.phonetic)
        if key in seen:
            log.warning("line %d: duplicate entry %s/%s ignored", line_no, *key)
            report.duplicates.append(Rejected(line_no, line, "duplicate (surface, phonetic)", "Duplicate"))
            continue
        seen.add(key)
        entries.append(entry)
    report.loaded = len(entries)
    return Lexicon(entries, table, report)


def read_lexicon(path: str | Path, table: Transliteration | None = None, strict: bool = False) -> Lexicon:
    with open(path, encoding="utf-8", newline="") as f:
        return load_lexicon(f, table, strict)


def open_bundled() -> TextIO:
    return resources.files("fpba").joinpath(BUNDLED_LEXICON).open(encoding="utf-8")


@lru_cache(maxsize=1)
def bundled_lexicon() -> Lexicon:
    with open_bundled() as f:
        return load_lexicon(f)


def code_histogram(lex: Lexicon) -> Counter:
    return Counter({code: len(lex.lookup(code)) for code in lex.codes()})
