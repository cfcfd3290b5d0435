"""Canonical corpus model for GDPR-like data-protection laws.

A law is an ordered four-level tree: Chapter > Section > Article > Recital.
"Recital" here means a numbered item under an article (the smallest span
that still conveys legal meaning); laws that print chapters without
sections get a synthetic section so every corpus has the same shape.

The module parses the tab-separated recital-level export format, splits
recital text into sentences with a deterministic rule-based splitter, and
serializes corpora to a canonical JSON document suitable for golden tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import CorpusError, DuplicateRecitalId, EmptyText, MalformedRow

RECORD_FIELDS = ("chapter", "section", "article", "recital", "title", "text")
RECORD_HEADER = "\t".join(RECORD_FIELDS)

# Sentence terminators and the abbreviations whose trailing period must
# not end a sentence ("See art. 5 of this Law." stays one sentence).
SENTENCE_TERMINATORS = frozenset(".;?!")
ABBREVIATIONS = frozenset({"art.", "no.", "e.g.", "i.e.", "par."})


class Level(str, Enum):
    """Granularity at which comparable units are extracted."""

    RECITAL = "recital"
    ARTICLE = "article"


@dataclass(frozen=True)
class Recital:
    id: str               # hierarchical, e.g. "c3.s1.a7.r2"
    alias: str            # flat, e.g. "a7.r2"
    number: int
    title: str
    text: str             # whitespace-normalized, never empty


@dataclass(frozen=True)
class Article:
    id: str
    alias: str            # flat, e.g. "a7"; unique per corpus
    number: int
    title: str
    recitals: tuple[Recital, ...]


@dataclass(frozen=True)
class Section:
    id: str
    number: int           # 0 marks the synthetic section of section-less chapters
    title: str
    articles: tuple[Article, ...]


@dataclass(frozen=True)
class Chapter:
    id: str
    number: int
    title: str
    sections: tuple[Section, ...]


@dataclass(frozen=True)
class Corpus:
    """An immutable law tree; safe to share across threads once built."""

    law_id: str
    language: str
    chapters: tuple[Chapter, ...]

    def iter_articles(self) -> Iterator[Article]:
        for chapter in self.chapters:
            for section in chapter.sections:
                yield from section.articles

    def iter_recitals(self) -> Iterator[Recital]:
        for article in self.iter_articles():
            yield from article.recitals

    def article_count(self) -> int:
        return sum(1 for _ in self.iter_articles())

    def recital_count(self) -> int:
        return sum(1 for _ in self.iter_recitals())


@dataclass(frozen=True)
class Unit:
    """One comparable text span: a recital, or an article as the in-order
    concatenation of its recitals.

    ``sentence_keys`` are the recital-level store-lookup keys
    (``<recital_alias>#<index>``) aligned one-to-one with ``sentences``;
    article units inherit the keys of their constituent recitals.
    ``law_id`` records the corpus a unit came from, since flat aliases are
    only unique within one law.
    """

    unit_id: str
    level: Level
    text: str
    sentences: tuple[str, ...]
    sentence_keys: tuple[str, ...]
    law_id: str = ""


def normalize_ws(text: str) -> str:
    """Collapse all whitespace runs to single spaces and strip the ends."""
    return " ".join(text.split())


def split_sentences(text: str) -> list[str]:
    """Split text into sentences on terminator-then-whitespace boundaries.

    The split is deterministic and total: a terminator (. ; ? !) followed
    by whitespace ends a sentence unless the word carrying it is a guarded
    abbreviation; text without terminators comes back as one sentence.
    Empty strings are never returned.
    """
    pieces: list[str] = []
    start = 0
    n = len(text)
    for i, ch in enumerate(text):
        if ch not in SENTENCE_TERMINATORS:
            continue
        if i + 1 >= n or not text[i + 1].isspace():
            continue
        if _is_guarded(text, start, i):
            continue
        piece = text[start : i + 1].strip()
        if piece:
            pieces.append(piece)
        start = i + 1
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def _is_guarded(text: str, start: int, i: int) -> bool:
    """True when the token ending at position i is a guarded abbreviation."""
    j = i
    while j > start and not text[j - 1].isspace():
        j -= 1
    token = text[j : i + 1].lower()
    # Ignore leading punctuation so "(e.g." still matches the guard.
    k = 0
    while k < len(token) and not token[k].isalnum():
        k += 1
    return token[k:] in ABBREVIATIONS


def parse_tabular(
    rows: Iterable[Mapping[str, object]],
    law_id: str = "corpus",
    language: str = "en",
) -> Corpus:
    """Build a Corpus from recital-level rows.

    Each row maps ``chapter``, ``article`` and ``recital`` to numeric
    indices (``section`` may be blank for laws that omit the level) plus a
    ``text`` field and an optional article ``title``. Ordering comes from
    the indices, never from row order, so shuffled exports parse
    identically. Rows sharing (chapter, section, article) group under one
    article.

    Raises:
        EmptyText: a row's text is blank after whitespace normalization.
        DuplicateRecitalId: two rows map to the same recital slot.
        MalformedRow: a non-numeric index or an article placed under two
            different chapters/sections.
    """
    parsed: list[tuple[tuple[int, int, int, int], str, str, int | None]] = []
    seen_slots: dict[tuple[int, int, int, int], int | None] = {}
    for row in rows:
        line = row.get("line")
        line = int(line) if isinstance(line, int) else None
        chapter = _index_of(row, "chapter", line, required=True)
        section = _index_of(row, "section", line, required=False)
        article = _index_of(row, "article", line, required=True)
        recital = _index_of(row, "recital", line, required=True)
        title = normalize_ws(str(row.get("title", "") or ""))
        text = normalize_ws(str(row.get("text", "") or ""))
        if not text:
            raise EmptyText(_at_line("row has empty text", line), line=line)
        slot = (chapter, section, article, recital)
        if slot in seen_slots:
            raise DuplicateRecitalId(
                _at_line(
                    f"recital slot c{chapter}.s{section}.a{article}.r{recital}"
                    " appears twice",
                    line,
                ),
                line=line,
            )
        seen_slots[slot] = line
        parsed.append((slot, title, text, line))

    if not parsed:
        raise MalformedRow("no rows to parse")

    parsed.sort(key=lambda item: item[0])

    article_home: dict[int, tuple[int, int]] = {}
    chapters: list[Chapter] = []
    cur_ch: int | None = None
    cur_sec: int | None = None
    cur_art: int | None = None
    sections: list[Section] = []
    articles: list[Article] = []
    recitals: list[Recital] = []
    art_title = ""

    def close_article() -> None:
        nonlocal recitals, art_title
        if cur_art is None:
            return
        sec_id = f"c{cur_ch}.s{cur_sec}"
        articles.append(
            Article(
                id=f"{sec_id}.a{cur_art}",
                alias=f"a{cur_art}",
                number=cur_art,
                title=art_title,
                recitals=tuple(recitals),
            )
        )
        recitals = []
        art_title = ""

    def close_section() -> None:
        nonlocal articles
        if cur_sec is None:
            return
        close_article()
        sections.append(
            Section(
                id=f"c{cur_ch}.s{cur_sec}",
                number=cur_sec,
                title="",
                articles=tuple(articles),
            )
        )
        articles = []

    def close_chapter() -> None:
        nonlocal sections
        if cur_ch is None:
            return
        close_section()
        chapters.append(
            Chapter(
                id=f"c{cur_ch}",
                number=cur_ch,
                title="",
                sections=tuple(sections),
            )
        )
        sections = []

    for (chapter, section, article, recital), title, text, line in parsed:
        home = article_home.get(article)
        if home is not None and home != (chapter, section):
            raise MalformedRow(
                _at_line(
                    f"article a{article} appears under both "
                    f"c{home[0]}.s{home[1]} and c{chapter}.s{section}",
                    line,
                ),
                line=line,
            )
        article_home[article] = (chapter, section)
        if chapter != cur_ch:
            close_chapter()
            cur_ch, cur_sec, cur_art = chapter, None, None
        if section != cur_sec:
            close_section()
            cur_sec, cur_art = section, None
        if article != cur_art:
            close_article()
            cur_art = article
        if title and not art_title:
            art_title = title
        art_id = f"c{chapter}.s{section}.a{article}"
        recitals.append(
            Recital(
                id=f"{art_id}.r{recital}",
                alias=f"a{article}.r{recital}",
                number=recital,
                title="",
                text=text,
            )
        )
    close_chapter()

    corpus = Corpus(law_id=law_id, language=language, chapters=tuple(chapters))
    validate_corpus(corpus)
    return corpus


def _index_of(
    row: Mapping[str, object], field: str, line: int | None, required: bool
) -> int:
    raw = str(row.get(field, "") or "").strip()
    if not raw:
        if required:
            raise MalformedRow(_at_line(f"missing {field} index", line), line=line)
        return 0
    try:
        value = int(raw)
    except ValueError:
        raise MalformedRow(
            _at_line(f"non-numeric {field} index {raw!r}", line), line=line
        ) from None
    if value < 0 or (required and value < 1):
        raise MalformedRow(
            _at_line(f"{field} index must be positive, got {value}", line), line=line
        )
    return value


def _at_line(message: str, line: int | None) -> str:
    return f"line {line}: {message}" if line is not None else message


def validate_corpus(corpus: Corpus) -> None:
    """Check the structural invariants every Corpus must satisfy."""
    seen_ids: set[str] = set()
    seen_aliases: set[str] = set()
    for chapter in corpus.chapters:
        _claim(seen_ids, chapter.id)
        for section in chapter.sections:
            _claim(seen_ids, section.id)
            if not section.id.startswith(chapter.id + "."):
                raise CorpusError(f"section {section.id} not under {chapter.id}")
            for article in section.articles:
                _claim(seen_ids, article.id)
                _claim(seen_aliases, article.alias)
                if not article.id.startswith(section.id + "."):
                    raise CorpusError(f"article {article.id} not under {section.id}")
                if not article.recitals:
                    raise CorpusError(f"article {article.alias} has no recitals")
                for recital in article.recitals:
                    _claim(seen_ids, recital.id)
                    _claim(seen_aliases, recital.alias)
                    if not recital.id.startswith(article.id + "."):
                        raise CorpusError(
                            f"recital {recital.id} not under {article.id}"
                        )
                    if not normalize_ws(recital.text):
                        raise EmptyText(f"recital {recital.alias} has empty text")


def _claim(seen: set[str], identifier: str) -> None:
    if identifier in seen:
        raise CorpusError(f"duplicate id {identifier}")
    seen.add(identifier)


def units(corpus: Corpus, level: Level) -> list[Unit]:
    """Extract comparable units in document order.

    Recital level yields one unit per recital. Article level yields one
    unit per article whose text is the single-space concatenation of its
    recital texts; its sentences and store keys are the recitals' own, so
    article vectors decompose exactly into recital vectors.
    """
    level = Level(level)
    out: list[Unit] = []
    for article in corpus.iter_articles():
        if level is Level.RECITAL:
            for recital in article.recitals:
                sentences = tuple(split_sentences(recital.text))
                keys = tuple(f"{recital.alias}#{i}" for i in range(len(sentences)))
                out.append(
                    Unit(
                        unit_id=recital.alias,
                        level=Level.RECITAL,
                        text=recital.text,
                        sentences=sentences,
                        sentence_keys=keys,
                        law_id=corpus.law_id,
                    )
                )
        else:
            art_sentences: list[str] = []
            art_keys: list[str] = []
            for recital in article.recitals:
                split = split_sentences(recital.text)
                art_keys.extend(f"{recital.alias}#{i}" for i in range(len(split)))
                art_sentences.extend(split)
            out.append(
                Unit(
                    unit_id=article.alias,
                    level=Level.ARTICLE,
                    text=" ".join(r.text for r in article.recitals),
                    sentences=tuple(art_sentences),
                    sentence_keys=tuple(art_keys),
                    law_id=corpus.law_id,
                )
            )
    return out


# --- corpus record files (tab-separated, one recital per line) -----------


def escape_text(text: str) -> str:
    """Escape backslash, tab and newline so text fits in one TSV field."""
    return (
        text.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def unescape_text(field: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(field):
        ch = field[i]
        if ch == "\\" and i + 1 < len(field):
            nxt = field[i + 1]
            mapped = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt)
            if mapped is not None:
                out.append(mapped)
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def read_corpus_file(
    path: str | Path, law_id: str | None = None, language: str = "en"
) -> Corpus:
    """Parse a corpus record file (header line plus one recital per line)."""
    path = Path(path)
    raw = path.read_text(encoding="utf-8")
    lines = raw.splitlines()
    if not lines:
        raise MalformedRow(f"{path}: empty corpus record file")
    if lines[0].rstrip("\r\n") != RECORD_HEADER:
        raise MalformedRow(
            f"{path}: expected header {RECORD_HEADER!r}, got {lines[0]!r}", line=1
        )
    rows: list[dict[str, object]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != len(RECORD_FIELDS):
            raise MalformedRow(
                f"line {lineno}: expected {len(RECORD_FIELDS)} fields, "
                f"got {len(fields)}",
                line=lineno,
            )
        row: dict[str, object] = dict(zip(RECORD_FIELDS, fields))
        row["text"] = unescape_text(str(row["text"]))
        row["line"] = lineno
        rows.append(row)
    inferred = law_id if law_id is not None else path.stem
    return parse_tabular(rows, law_id=inferred, language=language)


def write_corpus_file(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back out in the record-file format."""
    lines = [RECORD_HEADER]
    for chapter in corpus.chapters:
        for section in chapter.sections:
            for article in section.articles:
                for pos, recital in enumerate(article.recitals):
                    title = article.title if pos == 0 else ""
                    lines.append(
                        "\t".join(
                            (
                                str(chapter.number),
                                str(section.number) if section.number else "",
                                str(article.number),
                                str(recital.number),
                                title,
                                escape_text(recital.text),
                            )
                        )
                    )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# --- canonical JSON serialization ----------------------------------------


def serialize_corpus(corpus: Corpus) -> str:
    """Render the corpus tree as canonical JSON (stable field order)."""
    doc = {
        "law_id": corpus.law_id,
        "language": corpus.language,
        "chapters": [
            {
                "id": ch.id,
                "number": ch.number,
                "title": ch.title,
                "sections": [
                    {
                        "id": sec.id,
                        "number": sec.number,
                        "title": sec.title,
                        "articles": [
                            {
                                "id": art.id,
                                "alias": art.alias,
                                "number": art.number,
                                "title": art.title,
                                "recitals": [
                                    {
                                        "id": rec.id,
                                        "alias": rec.alias,
                                        "number": rec.number,
                                        "title": rec.title,
                                        "text": rec.text,
                                    }
                                    for rec in art.recitals
                                ],
                            }
                            for art in sec.articles
                        ],
                    }
                    for sec in ch.sections
                ],
            }
            for ch in corpus.chapters
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def deserialize_corpus(text: str) -> Corpus:
    """Parse canonical JSON back into a validated Corpus."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"invalid corpus JSON: {exc}") from exc
    try:
        corpus = Corpus(
            law_id=doc["law_id"],
            language=doc["language"],
            chapters=tuple(
                Chapter(
                    id=ch["id"],
                    number=ch["number"],
                    title=ch["title"],
                    sections=tuple(
                        Section(
                            id=sec["id"],
                            number=sec["number"],
                            title=sec["title"],
                            articles=tuple(
                                Article(
                                    id=art["id"],
                                    alias=art["alias"],
                                    number=art["number"],
                                    title=art["title"],
                                    recitals=tuple(
                                        Recital(
                                            id=rec["id"],
                                            alias=rec["alias"],
                                            number=rec["number"],
                                            title=rec["title"],
                                            text=rec["text"],
                                        )
                                        for rec in art["recitals"]
                                    ),
                                )
                                for art in sec["articles"]
                            ),
                        )
                        for sec in ch["sections"]
                    ),
                )
                for ch in doc["chapters"]
            ),
        )
    except (KeyError, TypeError) as exc:
        raise CorpusError(f"corpus JSON missing field: {exc}") from exc
    validate_corpus(corpus)
    return corpus


def load_corpus_json(path: str | Path) -> Corpus:
    return deserialize_corpus(Path(path).read_text(encoding="utf-8"))
