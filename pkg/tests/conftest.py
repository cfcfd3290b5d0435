import json
from pathlib import Path

import pytest

from lexalign.corpus import Level, Unit, split_sentences, read_corpus_file

TESTS_DIR = Path(__file__).parent
FIXTURES = TESTS_DIR / "fixtures"
DATA = TESTS_DIR.parent / "data"

GDPR_TSV = DATA / "gdpr.tsv"
LGPD_TSV = DATA / "lgpd.tsv"
GOLD_ARTICLES = DATA / "gold" / "gold_articles.tsv"
GOLD_RECITALS = DATA / "gold" / "gold_recitals.tsv"
CONFORMANCE = DATA / "conformance" / "sentence_splits.json"


def make_unit(unit_id: str, text: str, level: Level = Level.RECITAL, law_id: str = "") -> Unit:
    """Build a Unit the same way corpus.units does, for hand-made tests."""
    sentences = tuple(split_sentences(text))
    keys = tuple(f"{unit_id}#{i}" for i in range(len(sentences)))
    return Unit(
        unit_id=unit_id,
        level=level,
        text=text,
        sentences=sentences,
        sentence_keys=keys,
        law_id=law_id,
    )


def conformance_cases() -> list[dict]:
    return json.loads(CONFORMANCE.read_text(encoding="utf-8"))["cases"]


@pytest.fixture(scope="session")
def mini_alpha():
    return read_corpus_file(FIXTURES / "mini_alpha.tsv")


@pytest.fixture(scope="session")
def mini_beta():
    return read_corpus_file(FIXTURES / "mini_beta.tsv")


@pytest.fixture(scope="session")
def gdpr_corpus():
    return read_corpus_file(GDPR_TSV)


@pytest.fixture(scope="session")
def lgpd_corpus():
    return read_corpus_file(LGPD_TSV)
