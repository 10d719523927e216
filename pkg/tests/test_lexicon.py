import io
import random

import pytest

from fpba.errors import AlignmentFailure, FormatError
from fpba.lexicon import Lexicon, LexiconEntry, Slot, align_phonetic, load_lexicon, open_bundled
from fpba.text import LetterClass, normalize

C, A, I, U = LetterClass.CONSONANT, LetterClass.LONG_A, LetterClass.LONG_I, LetterClass.LONG_U


def test_align_sang():
    al = align_phonetic(normalize("سنگ"), "sang")
    assert al.prefix == ()
    assert al.slots == (Slot("s", C, ("a",)), Slot("n", C), Slot("g", C))
    assert al.phonetic == "sang"


def test_align_tork():
    al = align_phonetic(normalize("ترک"), "tork")
    assert [(s.anchor, s.trailing) for s in al.slots] == [("t", ("o",)), ("r", ()), ("k", ())]


def test_align_no_anchor():
    with pytest.raises(AlignmentFailure) as err:
        align_phonetic(normalize("سنگ"), "xyz")
    assert err.value.surface == "سنگ"
    assert err.value.position == 0


def test_align_vav_as_consonant_codes_all_sevens():
    al = align_phonetic(normalize("ونک"), "vanak")
    assert al.code == "777"
    assert [s.role for s in al.slots] == [C, C, C]


def test_align_vowel_roles():
    assert align_phonetic(normalize("کتاب"), "ketAb").code == "7717"
    assert align_phonetic(normalize("روز"), "ruz").code == "737"
    assert align_phonetic(normalize("خیلی"), "xeyli").code == "7772"
    assert align_phonetic(normalize("میلیون"), "milyun").code == "727737"


def test_align_same_letter_two_roles():
    al = align_phonetic(normalize("یی"), "yi")
    assert [s.role for s in al.slots] == [C, I]
    al = align_phonetic(normalize("وو"), "uv")
    assert [s.role for s in al.slots] == [U, C]
    assert align_phonetic(normalize("یا"), "yA").code == "71"


def test_align_prefix_and_final_vowel():
    al = align_phonetic(normalize("سب"), "asabo")
    assert al.prefix == ("a",)
    assert al.slots[-1].trailing == ("o",)
    assert al.phonetic == "asabo"


@pytest.mark.parametrize(
    "surface, phonetic",
    [
        ("سنگ", "sag"),  # missing anchor
        ("سنگ", "sngs"),  # extra consonant after last letter
        ("سنگ", "snrg"),  # non-short-vowel between anchors
        ("سنگ", "gns"),  # anchors out of order
        ("سنگ", "sAng"),  # long vowel where only short vowels may go
        ("سنگ", "san#g"),  # unknown symbol
    ],
)
def test_align_failures(surface, phonetic):
    with pytest.raises(AlignmentFailure):
        align_phonetic(normalize(surface), phonetic)


def test_load_worked_example(worked_lex):
    assert len(worked_lex) == 4
    assert [e.word for e in worked_lex.lookup("777")] == ["ونک", "ترک", "سنگ", "خرس"]
    assert list(worked_lex.by_code) == ["777"]
    e = worked_lex.lookup("777")[2]
    assert (e.phonetic, e.gram_kind, e.frequency, e.code) == ("sang", "noun", 2, "777")


def test_load_empty():
    lex = load_lexicon(io.StringIO(""))
    assert len(lex) == 0
    assert lex.lookup("777") == ()
    assert lex.report.ok


def test_negative_frequency_rejected():
    lex = load_lexicon(io.StringIO("سنگ\tsang\tnoun\t-5\nترک\ttork\n"))
    assert len(lex) == 1
    (rej,) = lex.report.rejected
    assert rej.kind == "FormatError" and rej.line_no == 1
    with pytest.raises(FormatError):
        load_lexicon(io.StringIO("سنگ\tsang\tnoun\t-5\n"), strict=True)


@pytest.mark.parametrize(
    "row, kind",
    [
        ("سنگ", "FormatError"),
        ("سنگ\tsang\tnoun\t3\textra", "FormatError"),
        ("سنگ\tsang\tnoun\tmany", "FormatError"),
        ("سنگ\t", "FormatError"),
        ("سنگ\txyz", "AlignmentFailure"),
        ("sang\tsang", "UnsupportedCharacter"),
    ],
)
def test_rejected_rows(row, kind):
    lex = load_lexicon(io.StringIO(row + "\n"))
    assert len(lex) == 0
    assert [r.kind for r in lex.report.rejected] == [kind]


def test_optional_columns_comments_blank_lines():
    text = "# header\n\nسنگ\tsang\n  \nترک\ttork\tname\n"
    lex = load_lexicon(io.StringIO(text))
    assert len(lex) == 2 and lex.report.ok
    assert {e.frequency for e in lex} == {0}


def test_duplicates_keep_first():
    lex = load_lexicon(io.StringIO("سنگ\tsang\tnoun\t1\nسنگ\tsang\tverb\t9\nسنگ\tsong\n"))
    assert len(lex) == 2
    assert [r.line_no for r in lex.report.duplicates] == [2]
    assert not lex.report.ok
    kept = [e for e in lex if e.phonetic == "sang"]
    assert kept[0].gram_kind == "noun"


def test_bucket_order_frequency_then_surface():
    text = "ترک\ttork\tx\t1\nسنگ\tsang\tx\t5\nخرس\txers\tx\t1\nبرگ\tbarg\tx\t1\n"
    lex = load_lexicon(io.StringIO(text))
    # ties on frequency fall back to code point order of the surface
    assert [e.word for e in lex.lookup("777")] == ["سنگ", "برگ", "ترک", "خرس"]


def test_bucket_matrix(worked_lex):
    b = worked_lex.bucket("777")
    assert b.letters.shape == (4, 3)
    assert b.letters[2].tolist() == [ord(c) for c in "سنگ"]


def _bundled_rows():
    with open_bundled() as f:
        return [line for line in f if line.strip() and not line.startswith("#")]


def test_bundled_loads_clean(bundled):
    assert bundled.report.ok
    assert len(bundled) >= 300
    assert len(bundled) == len(_bundled_rows())


def test_bundled_contains_example_words(bundled):
    have = {(e.word, e.phonetic) for e in bundled}
    assert {("ونک", "vanak"), ("ترک", "tork"), ("سنگ", "sang"), ("خرس", "xers")} <= have


def test_alignment_round_trip_and_code_length(bundled):
    for e in bundled:
        assert e.aligned.phonetic == e.phonetic
        assert len(e.code) == len(e.surface.graphemes) == len(e.aligned.slots)
        for s in e.aligned.slots:
            assert set(s.trailing) <= set("aeo")


def test_index_complete(bundled):
    assert sum(len(v) for v in bundled.by_code.values()) == len(bundled)
    for code, entries in bundled.by_code.items():
        assert all(e.code == code for e in entries)


def test_load_order_insensitive(bundled):
    rows = _bundled_rows()
    random.Random(3).shuffle(rows)
    shuffled = load_lexicon(io.StringIO("".join(rows)))
    assert [(e.word, e.phonetic) for e in shuffled] == [(e.word, e.phonetic) for e in bundled]
    assert {c: [e.word for e in v] for c, v in shuffled.by_code.items()} == {
        c: [e.word for e in v] for c, v in bundled.by_code.items()
    }


def test_lexicon_rejects_duplicate_entries():
    e = LexiconEntry.build("سنگ", "sang")
    with pytest.raises(ValueError):
        Lexicon([e, LexiconEntry.build("سنگ", "sang")])


def test_without(worked_lex):
    sang = worked_lex.lookup("777")[2]
    reduced = worked_lex.without(sang)
    assert [e.word for e in reduced.lookup("777")] == ["ونک", "ترک", "خرس"]
    assert len(reduced) == 3 and len(worked_lex) == 4
    assert reduced.bucket("777").letters.shape == (3, 3)
    solo = load_lexicon(io.StringIO("سنگ\tsang\nکار\tkAr\n"))
    assert solo.without(solo.lookup("717")[0]).bucket("717") is None
    with pytest.raises(KeyError):
        reduced.without(sang)
