"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 lexicon or I/O failure, 3 the word
could not be pronounced, 4 the lexicon check found rejected rows.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .assembly import PhonemizationResult, phonemize
from .errors import EmptyWord, FpbaError, NoCandidates, TooManyAmbiguities, UnsupportedCharacter
from .evaluation import evaluate, leave_one_out, read_corpus
from .lexicon import Lexicon, bundled_lexicon, code_histogram, load_lexicon, open_bundled, read_lexicon
from .text import Transliteration

log = logging.getLogger("fpba")

EXIT_USAGE = 1
EXIT_LEXICON = 2
EXIT_WORD = 3
EXIT_REJECTED = 4

LEXICON_ENV = "FPBA_LEXICON"
TABLE_ENV = "FPBA_TABLE"

_STATUS = {
    NoCandidates: "NO_CANDIDATES",
    EmptyWord: "EMPTY_WORD",
    UnsupportedCharacter: "UNSUPPORTED_CHARACTER",
    TooManyAmbiguities: "TOO_MANY_AMBIGUITIES",
}


class LexiconLoadError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _lexicon_path(args: argparse.Namespace) -> str | None:
    return args.lexicon or os.environ.get(LEXICON_ENV) or None


def _table_path(args: argparse.Namespace) -> str | None:
    return args.table or os.environ.get(TABLE_ENV) or None


def _load(lexicon_path: str | None, table_path: str | None) -> Lexicon:
    try:
        table = Transliteration.load(table_path) if table_path else None
        if lexicon_path:
            return read_lexicon(lexicon_path, table)
        if table is None:
            return bundled_lexicon()
        with open_bundled() as f:
            return load_lexicon(f, table)
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        raise LexiconLoadError(str(exc)) from exc


def _status(exc: FpbaError) -> str:
    for cls, name in _STATUS.items():
        if isinstance(exc, cls):
            return name
    return "ERROR"


def cmd_phonemize(args: argparse.Namespace) -> int:
    lex = _load(_lexicon_path(args), _table_path(args))
    try:
        res = phonemize(lex, args.word, skeleton_fallback=args.skeleton_fallback)
    except NoCandidates as exc:
        if exc.skeleton is None:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_WORD
        print(f"warning: {exc}; using consonant skeleton", file=sys.stderr)
        if args.json:
            print(json.dumps({"word": exc.surface, "phonetic": exc.skeleton, "skeleton": True}, ensure_ascii=False))
        else:
            print(exc.skeleton)
        return 0
    except FpbaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WORD

    if args.json:
        print(json.dumps(res.as_dict(), ensure_ascii=False))
    elif args.verbose:
        print(_verbose(res))
    else:
        print(res.phonetic)
    return 0


def _verbose(res: PhonemizationResult, shown: int = 5) -> str:
    lines = [
        res.phonetic,
        f"  word:      {res.word.surface} (code {res.role_code})",
        f"  pattern:   {res.pattern.word} /{res.pattern.phonetic}/",
        f"  s:         {float(res.s):.3f} ({res.s})",
        f"  homograph: {'yes' if res.homograph else 'no'}",
    ]
    alts = res.alternatives
    if alts:
        lines.append("  alternatives:")
        for a in alts[:shown]:
            lines.append(f"    {a.phonetic:<12} {a.pattern.word} /{a.pattern.phonetic}/  s={float(a.s):.3f} ({a.s})")
        if len(alts) > shown:
            lines.append(f"    ... {len(alts) - shown} more")
    return "\n".join(lines)


# Batch workers build output lines; one lexicon per process.
_worker: dict = {}


def _init_worker(lexicon_path: str | None, table_path: str | None, fmt: str, skeleton: bool) -> None:
    _worker.update(lex=_load(lexicon_path, table_path), fmt=fmt, skeleton=skeleton)


def _render(word: str) -> tuple[str, str]:
    lex, fmt, skel = _worker["lex"], _worker["fmt"], _worker["skeleton"]
    try:
        res = phonemize(lex, word, skeleton_fallback=skel)
    except FpbaError as exc:
        status = _status(exc)
        phonetic = ""
        if isinstance(exc, NoCandidates) and exc.skeleton is not None:
            status, phonetic = "SKELETON", exc.skeleton
        if fmt == "json":
            rec = {"word": word, "phonetic": phonetic or None, "status": status, "error": str(exc)}
            return json.dumps(rec, ensure_ascii=False), status
        return "\t".join([word, phonetic, "", "", "", status]), status
    if fmt == "json":
        rec = {**res.as_dict(alternatives=False), "status": "OK"}
        return json.dumps(rec, ensure_ascii=False), ("HOMOGRAPH" if res.homograph else "OK")
    row = [word, res.phonetic, f"{float(res.s):.3f}", "1" if res.homograph else "0", res.pattern.word, "OK"]
    return "\t".join(row), ("HOMOGRAPH" if res.homograph else "OK")


def run_batch(
    words: Sequence[str],
    lexicon_path: str | None = None,
    table_path: str | None = None,
    fmt: str = "tsv",
    skeleton: bool = False,
    jobs: int = 1,
) -> tuple[list[str], dict[str, int]]:
    """Render one output line per input word, in input order.

    Repeated words are computed once.  With ``jobs > 1`` distinct words are
    spread over worker processes; output order does not depend on it.
    """
    unique = list(dict.fromkeys(words))
    if jobs > 1 and len(unique) > 1:
        with ProcessPoolExecutor(
            jobs, initializer=_init_worker, initargs=(lexicon_path, table_path, fmt, skeleton)
        ) as pool:
            rendered = list(pool.map(_render, unique, chunksize=max(1, len(unique) // (jobs * 4))))
    else:
        _init_worker(lexicon_path, table_path, fmt, skeleton)
        rendered = [_render(w) for w in unique]
    table = dict(zip(unique, rendered))
    lines = []
    counts: dict[str, int] = {}
    for w in words:
        line, status = table[w]
        lines.append(line)
        counts[status] = counts.get(status, 0) + 1
    return lines, counts


def cmd_batch(args: argparse.Namespace) -> int:
    lexicon_path, table_path = _lexicon_path(args), _table_path(args)
    # fail fast on a bad lexicon before reading input
    _load(lexicon_path, table_path)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.input).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_LEXICON
    words = [line.rstrip("\r") for line in text.split("\n")]
    if words and words[-1] == "":
        words.pop()
    lines, counts = run_batch(words, lexicon_path, table_path, args.format, args.skeleton_fallback, args.jobs)
    payload = "".join(line + "\n" for line in lines)
    try:
        if args.output == "-":
            sys.stdout.write(payload)
        else:
            Path(args.output).write_text(payload, encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_LEXICON
    summary = ", ".join(f"{k.lower()} {v}" for k, v in sorted(counts.items()))
    print(f"{len(words)} words: {summary or 'none'}", file=sys.stderr)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    lex = _load(_lexicon_path(args), _table_path(args))
    if args.leave_one_out:
        if len(lex) < 2:
            print("error: leave-one-out needs at least two lexicon entries", file=sys.stderr)
            return EXIT_LEXICON
        report = leave_one_out(lex)
    else:
        try:
            with open(args.corpus, encoding="utf-8") as f:
                corpus = read_corpus(f)
        except (OSError, UnicodeDecodeError, FpbaError) as exc:
            print(f"error: cannot read corpus: {exc}", file=sys.stderr)
            return EXIT_LEXICON
        if not corpus:
            print("error: corpus is empty", file=sys.stderr)
            return EXIT_LEXICON
        report = evaluate(lex, corpus)
    if args.json:
        print(json.dumps(report.as_dict(log=args.log), ensure_ascii=False, indent=2))
    else:
        print(report.format_table())
        if args.log:
            for w in report.log:
                mark = "ok" if w.correct else w.error
                print(f"{w.word}\t{w.gold}\t{w.predicted}\t{w.s if w.s is not None else '-'}\t{mark}")
    return 0


def cmd_lexicon_check(args: argparse.Namespace) -> int:
    lex = _load(_lexicon_path(args), _table_path(args))
    rep = lex.report
    hist = code_histogram(lex)
    print(f"accepted: {rep.loaded}")
    print(f"rejected: {len(rep.rejected)}")
    for r in rep.rejected:
        print(f"  line {r.line_no}: {r.kind}: {r.reason}")
    print(f"duplicates: {len(rep.duplicates)}")
    for r in rep.duplicates:
        print(f"  line {r.line_no}: {r.line.split(chr(9))[0]}")
    sizes = sorted(hist.values())
    print(f"distinct codes: {len(hist)}")
    if sizes:
        print(
            f"bucket size: min {sizes[0]}, median {statistics.median(sizes):g}, max {sizes[-1]}; "
            f"singletons {sum(1 for s in sizes if s == 1)}"
        )
        print("codes:")
        for code, n in sorted(hist.items(), key=lambda kv: (-kv[1], len(kv[0]), kv[0])):
            print(f"  {code:<10} {n}")
    return 0 if rep.ok else EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon", metavar="PATH", help=f"lexicon TSV (default: ${LEXICON_ENV} or the bundled one)")
    common.add_argument("--table", metavar="PATH", help=f"transliteration table TSV (default: ${TABLE_ENV} or bundled)")

    p = _Parser(prog="fpba", description="Persian grapheme-to-phoneme conversion by analogy.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ph = sub.add_parser("phonemize", parents=[common], help="pronounce one word")
    ph.add_argument("word")
    ph.add_argument("--json", action="store_true")
    ph.add_argument("--verbose", "-v", action="store_true")
    ph.add_argument("--skeleton-fallback", action="store_true", help="print bare consonants when nothing matches")
    ph.set_defaults(func=cmd_phonemize)

    b = sub.add_parser("batch", parents=[common], help="pronounce one word per line")
    b.add_argument("input", help="input file, or - for stdin")
    b.add_argument("output", help="output file, or - for stdout")
    b.add_argument("--format", choices=("tsv", "json"), default="tsv")
    b.add_argument("--jobs", type=int, default=1, metavar="N")
    b.add_argument("--skeleton-fallback", action="store_true")
    b.set_defaults(func=cmd_batch)

    e = sub.add_parser("eval", parents=[common], help="accuracy on a corpus or by leave-one-out")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus", metavar="PATH")
    src.add_argument("--leave-one-out", action="store_true")
    e.add_argument("--json", action="store_true")
    e.add_argument("--log", action="store_true", help="include the per-word log")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("lexicon-check", parents=[common], help="validate a lexicon and show code coverage")
    c.set_defaults(func=cmd_lexicon_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except LexiconLoadError as exc:
        print(f"error: cannot load lexicon: {exc}", file=sys.stderr)
        return EXIT_LEXICON


if __name__ == "__main__":
    sys.exit(main())
