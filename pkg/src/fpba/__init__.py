"""Persian grapheme-to-phoneme conversion by analogy with a small pattern lexicon."""

from .analogy import CandidateScore, Selection, letter_weights, match_vector, rank_and_select, score
from .assembly import PhonemizationResult, phonemize, skeleton, splice
from .errors import (
    AlignmentFailure,
    CorpusFormatError,
    EmptyWord,
    FormatError,
    FpbaError,
    LengthMismatch,
    NoCandidates,
    TooManyAmbiguities,
    UnsupportedCharacter,
)
from .evaluation import EvalReport, evaluate, leave_one_out, letter_accuracy
from .lexicon import Lexicon, LexiconEntry, align_phonetic, bundled_lexicon, load_lexicon, read_lexicon
from .matcher import candidates
from .text import LetterClass, NormalizedWord, base_phoneme, candidate_codes, encode_structural, normalize

__version__ = "0.1.0"

__all__ = [
    "CandidateScore",
    "Selection",
    "letter_weights",
    "match_vector",
    "rank_and_select",
    "score",
    "PhonemizationResult",
    "phonemize",
    "skeleton",
    "splice",
    "AlignmentFailure",
    "CorpusFormatError",
    "EmptyWord",
    "FormatError",
    "FpbaError",
    "LengthMismatch",
    "NoCandidates",
    "TooManyAmbiguities",
    "UnsupportedCharacter",
    "EvalReport",
    "evaluate",
    "leave_one_out",
    "letter_accuracy",
    "Lexicon",
    "LexiconEntry",
    "align_phonetic",
    "bundled_lexicon",
    "load_lexicon",
    "read_lexicon",
    "candidates",
    "LetterClass",
    "NormalizedWord",
    "base_phoneme",
    "candidate_codes",
    "encode_structural",
    "normalize",
]
