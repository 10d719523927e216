"""Retrieve lexicon patterns that share the input's structural code."""

from __future__ import annotations

from typing import Iterable

from .lexicon import Bucket, Lexicon, LexiconEntry


def matching_buckets(lex: Lexicon, codes: Iterable[str]) -> list[Bucket]:
    """Non-empty buckets for ``codes``, in the order the codes are given."""
    out = []
    seen = set()
    for code in codes:
        if code in seen:
            continue
        seen.add(code)
        b = lex.bucket(code)
        if b is not None:
            out.append(b)
    return out


def candidates(lex: Lexicon, codes: Iterable[str]) -> list[LexiconEntry]:
    """Union of the code buckets, each bucket in its stored order.

    An entry lives under exactly one code, so buckets never overlap.
    """
    codes = list(codes)
    if not codes:
        raise ValueError("codes must be non-empty")
    return [e for b in matching_buckets(lex, codes) for e in b.entries]
