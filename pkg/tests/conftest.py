from __future__ import annotations

import io

import pytest

from fpba.lexicon import bundled_lexicon, load_lexicon

# The four same-coded patterns of the worked example, in the order the
# example lists them.  Frequencies only fix that order inside the bucket.
WORKED_EXAMPLE_TSV = "ونک\tvanak\tname\t4\nترک\ttork\tname\t3\nسنگ\tsang\tnoun\t2\nخرس\txers\tnoun\t1\n"

_results = pytest.StashKey[dict]()


@pytest.fixture
def worked_lex():
    return load_lexicon(io.StringIO(WORKED_EXAMPLE_TSV))


@pytest.fixture(scope="session")
def bundled():
    return bundled_lexicon()


@pytest.fixture
def lexicon_file(tmp_path):
    def make(text: str, name: str = "lex.tsv"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return p

    return make


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the session summary prints them all."""
    results = request.config.stash.setdefault(_results, {})

    def record(n: int, ok: bool, detail: str) -> None:
        results[n] = (ok, detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_results, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
