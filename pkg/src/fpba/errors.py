"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FpbaError(ValueError):
    """Base class for every error raised by this package."""


class EmptyWord(FpbaError):
    def __init__(self, raw: str = ""):
        super().__init__(f"empty word after normalization: {raw!r}")
        self.raw = raw


class UnsupportedCharacter(FpbaError):
    def __init__(self, char: str, position: int, raw: str):
        super().__init__(
            f"unsupported character {char!r} (U+{ord(char):04X}) at position {position} in {raw!r}"
        )
        self.char = char
        self.position = position
        self.raw = raw


class TooManyAmbiguities(FpbaError):
    def __init__(self, surface: str, count: int, cap: int):
        super().__init__(f"{surface!r} has {count} ambiguous letters (cap is {cap})")
        self.surface = surface
        self.count = count
        self.cap = cap


class LengthMismatch(FpbaError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"length mismatch: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class AlignmentFailure(FpbaError):
    def __init__(self, surface: str, phonetic: str, position: int, reason: str):
        super().__init__(f"cannot align {surface!r} to {phonetic!r} at letter {position}: {reason}")
        self.surface = surface
        self.phonetic = phonetic
        self.position = position
        self.reason = reason


class FormatError(FpbaError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class CorpusFormatError(FormatError):
    pass


class NoCandidates(FpbaError):
    """No lexicon pattern shares a structural code with the input.

    ``skeleton`` holds the bare consonant/long-vowel phonetic when the caller
    asked for a degraded fallback, otherwise ``None``.
    """

    def __init__(self, surface: str, codes: tuple[str, ...] = (), skeleton: str | None = None):
        super().__init__(f"no pattern matches {surface!r} (codes: {', '.join(codes) or '-'})")
        self.surface = surface
        self.codes = codes
        self.skeleton = skeleton
