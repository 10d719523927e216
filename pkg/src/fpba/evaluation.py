"""Letter / word / sentence accuracy and a leave-one-out harness."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .assembly import phonemize, splice
from .errors import CorpusFormatError, FpbaError
from .lexicon import Lexicon
from .matcher import candidates
from .text import Transliteration, candidate_codes, default_table

__all__ = [
    "levenshtein",
    "letter_accuracy",
    "CorpusItem",
    "WordLog",
    "EvalReport",
    "read_corpus",
    "evaluate",
    "leave_one_out",
    "TABLE3_REFERENCE",
]

# Published figures for the analogy method on an unreleased 500-word text.
# Reference only; nothing here reproduces them.
TABLE3_REFERENCE = {"letter": 0.94, "word": 0.84, "sentence": 0.69}


def levenshtein(a: Sequence, b: Sequence) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def letter_accuracy(predicted: str, gold: str, table: Transliteration | None = None) -> float:
    """``1 - edit_distance / max(len)`` over phoneme symbols, clamped to [0, 1]."""
    if not gold:
        raise ValueError("gold phonetic must be non-empty")
    table = table or default_table()
    p = table.tokenize(predicted, strict=False)
    g = table.tokenize(gold, strict=False)
    acc = 1 - levenshtein(p, g) / max(len(p), len(g))
    return min(1.0, max(0.0, acc))


@dataclass(frozen=True)
class CorpusItem:
    word: str
    gold: str
    sentence: int = 0


@dataclass
class WordLog:
    word: str
    gold: str
    predicted: str
    s: Fraction | None
    error: str | None
    sentence: int
    letter_accuracy: float

    @property
    def correct(self) -> bool:
        return self.error is None


@dataclass
class EvalReport:
    letter_accuracy: float
    word_accuracy: float
    sentence_accuracy: float | None
    words_total: int
    words_correct: int
    words_failed: int
    sentences_total: int
    sentences_correct: int
    log: list[WordLog] = field(default_factory=list, repr=False)
    baseline_word_accuracy: float | None = None

    def as_dict(self, log: bool = False) -> dict:
        d = asdict(self)
        d.pop("log")
        if log:
            d["log"] = [
                {**asdict(w), "s": None if w.s is None else str(w.s)} for w in self.log
            ]
        return d

    def format_table(self) -> str:
        def pct(x: float | None) -> str:
            return "-" if x is None else f"{x:.3f}"

        rows = [
            ("letter accuracy", pct(self.letter_accuracy)),
            ("word accuracy", pct(self.word_accuracy)),
            ("sentence accuracy", pct(self.sentence_accuracy)),
            ("words", f"{self.words_correct}/{self.words_total} correct, {self.words_failed} unmatched"),
            ("sentences", f"{self.sentences_correct}/{self.sentences_total} correct"),
        ]
        if self.baseline_word_accuracy is not None:
            rows.append(("random-pattern baseline", pct(self.baseline_word_accuracy)))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def read_corpus(stream: TextIO | Iterable[str]) -> list[CorpusItem]:
    """Corpus TSV: word, gold phonetic, integer sentence id."""
    items = []
    for line_no, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise CorpusFormatError(line_no, f"expected 3 columns, got {len(cols)}")
        word, gold, sid = (c.strip() for c in cols)
        if not gold:
            raise CorpusFormatError(line_no, "empty gold phonetic")
        try:
            sentence = int(sid)
        except ValueError:
            raise CorpusFormatError(line_no, f"bad sentence id {sid!r}") from None
        items.append(CorpusItem(word, gold, sentence))
    return items


def _judge(lex: Lexicon, item: CorpusItem) -> WordLog:
    try:
        res = phonemize(lex, item.word)
    except FpbaError as exc:
        predicted, s, error = "", None, type(exc).__name__
    else:
        predicted, s = res.phonetic, res.s
        error = None if predicted == item.gold else "Mismatch"
    la = letter_accuracy(predicted, item.gold, lex.table) if predicted else 0.0
    return WordLog(item.word, item.gold, predicted, s, error, item.sentence, la)


def _aggregate(logs: list[WordLog]) -> EvalReport:
    if not logs:
        raise ValueError("empty corpus")
    sentences: dict[int, bool] = {}
    for w in logs:
        sentences[w.sentence] = sentences.get(w.sentence, True) and w.correct
    correct = sum(w.correct for w in logs)
    return EvalReport(
        letter_accuracy=sum(w.letter_accuracy for w in logs) / len(logs),
        word_accuracy=correct / len(logs),
        sentence_accuracy=sum(sentences.values()) / len(sentences),
        words_total=len(logs),
        words_correct=correct,
        words_failed=sum(w.error not in (None, "Mismatch") for w in logs),
        sentences_total=len(sentences),
        sentences_correct=sum(sentences.values()),
        log=logs,
    )


def evaluate(lex: Lexicon, corpus: Sequence[CorpusItem]) -> EvalReport:
    """Score ``lex`` on a gold corpus; a sentence counts only if every word is right."""
    if not corpus:
        raise ValueError("corpus must be non-empty")
    return _aggregate([_judge(lex, item) for item in corpus])


def leave_one_out(lex: Lexicon) -> EvalReport:
    """Pronounce every entry from the rest of the lexicon.

    Each word is its own sentence.  The report also carries the expected word
    accuracy of picking a same-coded pattern uniformly at random, computed
    exactly over the same candidate sets.
    """
    if len(lex) < 2:
        raise ValueError("leave-one-out needs at least two entries")
    logs = []
    baseline = Fraction(0)
    for i, entry in enumerate(lex.entries):
        reduced = lex.without(entry)
        logs.append(_judge(reduced, CorpusItem(entry.word, entry.phonetic, i)))
        pool = candidates(reduced, candidate_codes(entry.surface))
        if pool:
            hits = sum(splice(entry.surface, c.code, c, lex.table) == entry.phonetic for c in pool)
            baseline += Fraction(hits, len(pool))
    report = _aggregate(logs)
    report.baseline_word_accuracy = float(baseline / len(lex))
    return report
