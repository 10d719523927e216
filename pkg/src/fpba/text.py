"""Persian letter handling: normalization, structural coding, base phonemes."""

from __future__ import annotations

import enum
import itertools
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

from .errors import EmptyWord, FormatError, TooManyAmbiguities, UnsupportedCharacter

__all__ = [
    "LetterClass",
    "Grapheme",
    "NormalizedWord",
    "Transliteration",
    "SHORT_VOWELS",
    "AMBIGUITY_CAP",
    "SUPPORTED_LETTERS",
    "normalize",
    "encode_structural",
    "candidate_codes",
    "base_phoneme",
    "allowed_roles",
    "default_table",
]


class LetterClass(enum.IntEnum):
    """Structural class of a letter; the value is its code digit."""

    CONSONANT = 7
    LONG_A = 1
    LONG_I = 2
    LONG_U = 3

    @property
    def digit(self) -> str:
        return _DIGIT_OF[self]

    @classmethod
    def from_digit(cls, digit: str) -> "LetterClass":
        return _CLASS_OF[digit]

    @classmethod
    def from_role(cls, role: str) -> "LetterClass":
        return cls[role.upper()]

    @property
    def role(self) -> str:
        return self.name.lower()


_DIGIT_OF = {c: str(c.value) for c in LetterClass}
_CLASS_OF = {str(c.value): c for c in LetterClass}

SHORT_VOWELS = frozenset("aeo")
AMBIGUITY_CAP = 4

_LONG_VOWELS = {
    "\u0627": LetterClass.LONG_A,  # ا
    "\u0622": LetterClass.LONG_A,  # آ
    "\u06cc": LetterClass.LONG_I,  # ی
    "\u0648": LetterClass.LONG_U,  # و
}
_AMBIGUOUS = frozenset("\u06cc\u0648")

# Hamza forms and ع are consonants.
_CONSONANTS = (
    "بپتثجچحخدذرزژسشصضطظعغفقکگلمنه"
    "ءؤئ"
)
SUPPORTED_LETTERS = frozenset(_CONSONANTS) | frozenset(_LONG_VOWELS)

_FOLD = {
    "\u064a": "\u06cc",  # Arabic yeh -> Persian yeh
    "\u0649": "\u06cc",  # alef maksura -> Persian yeh
    "\u0643": "\u06a9",  # Arabic kaf -> keheh
    "\u0623": "\u0627",  # alef with hamza above
    "\u0625": "\u0627",  # alef with hamza below
    "\u0671": "\u0627",  # alef wasla
    "\u0629": "\u0647",  # teh marbuta
    "\u06c0": "\u0647",  # heh with yeh above
    "\u06be": "\u0647",  # heh doachashmee
    "\u06d5": "\u0647",  # ae
}
# Removed outright: tatweel, ZWNJ, ZWJ, LRM/RLM.
_DROP = frozenset("\u0640\u200c\u200d\u200e\u200f")


def _is_diacritic(ch: str) -> bool:
    cp = ord(ch)
    return 0x064B <= cp <= 0x065F or cp == 0x0670 or 0x06D6 <= cp <= 0x06ED


@dataclass(frozen=True, slots=True)
class Grapheme:
    codepoint: int
    cls: LetterClass
    ambiguous: bool

    @property
    def char(self) -> str:
        return chr(self.codepoint)

    def __str__(self) -> str:
        return self.char


_GRAPHEMES = {
    ch: Grapheme(ord(ch), _LONG_VOWELS.get(ch, LetterClass.CONSONANT), ch in _AMBIGUOUS)
    for ch in SUPPORTED_LETTERS
}


@dataclass(frozen=True, slots=True)
class NormalizedWord:
    """A word as an ordered run of graphemes in reading order."""

    surface: str
    graphemes: tuple[Grapheme, ...]
    codepoints: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "codepoints", tuple(g.codepoint for g in self.graphemes))

    def __len__(self) -> int:
        return len(self.graphemes)

    def __str__(self) -> str:
        return self.surface

    @property
    def ambiguous_positions(self) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.graphemes) if g.ambiguous)


def normalize(raw: str) -> NormalizedWord:
    """Fold spelling variants, strip short-vowel marks and joiners, validate letters.

    Positions in :class:`UnsupportedCharacter` index the trimmed input after
    Unicode compatibility normalization (NFKC), which also maps Arabic
    presentation forms back to base letters.
    """
    text = unicodedata.normalize("NFKC", raw.strip())
    if not text:
        raise EmptyWord(raw)
    out = []
    for pos, ch in enumerate(text):
        if ch in _DROP or _is_diacritic(ch):
            continue
        ch = _FOLD.get(ch, ch)
        g = _GRAPHEMES.get(ch)
        if g is None:
            raise UnsupportedCharacter(ch, pos, raw)
        out.append(g)
    if not out:
        raise EmptyWord(raw)
    return NormalizedWord("".join(g.char for g in out), tuple(out))


def encode_structural(word: NormalizedWord) -> str:
    """Per-letter code: 7 for consonants, 1/2/3 for the long vowels ا آ / ی / و."""
    return "".join(_DIGIT_OF[g.cls] for g in word.graphemes)


def candidate_codes(word: NormalizedWord, cap: int = AMBIGUITY_CAP) -> tuple[str, ...]:
    """All codes reachable by reading each و/ی as either vowel or consonant.

    Ordered with the vowel reading preferred at each ambiguous position, left to
    right, so the first code is always ``encode_structural(word)``.
    """
    base = encode_structural(word)
    positions = word.ambiguous_positions
    if len(positions) > cap:
        raise TooManyAmbiguities(word.surface, len(positions), cap)
    if not positions:
        return (base,)
    codes = []
    digits = list(base)
    for choice in itertools.product(*[(base[i], "7") for i in positions]):
        for i, d in zip(positions, choice):
            digits[i] = d
        codes.append("".join(digits))
    return tuple(codes)


class Transliteration:
    """Letter/role -> phoneme table plus a tokenizer for phoneme strings."""

    def __init__(self, rows: Iterable[tuple[str, LetterClass, str]]):
        self._map: dict[tuple[int, LetterClass], str] = {}
        for letter, role, phoneme in rows:
            if len(letter) != 1:
                raise ValueError(f"not a single letter: {letter!r}")
            self._map[(ord(letter), role)] = phoneme
        missing = [
            f"{g.char}/{role.role}"
            for g in _GRAPHEMES.values()
            for role in allowed_roles(g)
            if (g.codepoint, role) not in self._map
        ]
        if missing:
            raise ValueError(f"transliteration table incomplete: {', '.join(sorted(missing))}")
        clash = {p for p in self._map.values() if p in SHORT_VOWELS}
        if clash:
            raise ValueError(f"phonemes collide with short vowels: {sorted(clash)}")
        inventory = set(self._map.values()) | SHORT_VOWELS
        self.inventory = frozenset(inventory)
        self._by_len = sorted({len(p) for p in inventory}, reverse=True)

    @classmethod
    def read(cls, stream: TextIO) -> "Transliteration":
        rows = []
        for line_no, line in enumerate(stream, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise FormatError(line_no, f"expected 3 columns, got {len(cols)}")
            letter, role, phoneme = (c.strip() for c in cols)
            try:
                cls_ = LetterClass.from_role(role)
            except KeyError:
                raise FormatError(line_no, f"unknown role {role!r}") from None
            if not phoneme:
                raise FormatError(line_no, "empty phoneme")
            rows.append((letter, cls_, phoneme))
        return cls(rows)

    @classmethod
    def load(cls, path: str | Path) -> "Transliteration":
        with open(path, encoding="utf-8") as f:
            return cls.read(f)

    def phoneme(self, g: Grapheme, role: LetterClass) -> str:
        try:
            return self._map[(g.codepoint, role)]
        except KeyError:
            raise ValueError(f"{g.char!r} cannot take role {role.role}") from None

    def tokenize(self, phonetic: str, strict: bool = True) -> list[str]:
        """Split a phoneme string into symbols by longest match.

        With ``strict=False`` unknown characters become one-character symbols.
        """
        out = []
        i = 0
        while i < len(phonetic):
            for n in self._by_len:
                piece = phonetic[i : i + n]
                if len(piece) == n and piece in self.inventory:
                    out.append(piece)
                    i += n
                    break
            else:
                if strict:
                    raise ValueError(f"unknown phoneme at {i} in {phonetic!r}")
                out.append(phonetic[i])
                i += 1
        return out


def allowed_roles(g: Grapheme) -> tuple[LetterClass, ...]:
    """Roles a letter may play, vowel role first for و and ی."""
    if g.ambiguous:
        return (g.cls, LetterClass.CONSONANT)
    return (g.cls,)


@lru_cache(maxsize=1)
def default_table() -> Transliteration:
    with resources.files("fpba").joinpath("data/translit.tsv").open(encoding="utf-8") as f:
        return Transliteration.read(f)


def base_phoneme(g: Grapheme, role: LetterClass, table: Transliteration | None = None) -> str:
    return (table or default_table()).phoneme(g, role)
