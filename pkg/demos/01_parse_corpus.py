"""Parse a law's tabular export into the canonical corpus tree.

Walks the four-level hierarchy (chapter > section > article > recital),
shows how units are extracted at both comparison levels, and round-trips
the corpus through its canonical JSON form.

Run from the repository root:  python3 demos/01_parse_corpus.py
"""

from pathlib import Path

from lexalign import Level, deserialize_corpus, read_corpus_file, serialize_corpus, units

DATA = Path(__file__).resolve().parent.parent / "data"

corpus = read_corpus_file(DATA / "gdpr.tsv")
print(f"law {corpus.law_id!r}: {len(corpus.chapters)} chapters, "
      f"{corpus.article_count()} articles, {corpus.recital_count()} recitals")

# the first chapter, down to recital level
chapter = corpus.chapters[0]
print(f"\n{chapter.id}:")
for section in chapter.sections:
    label = section.id if section.number else f"{section.id} (synthetic, law has no section here)"
    print(f"  {label}")
    for article in section.articles[:2]:
        print(f"    {article.alias}: {article.title}")
        for recital in article.recitals[:2]:
            print(f"      {recital.alias}: {recital.text[:70]}...")

# comparable units at the two granularities
recital_units = units(corpus, Level.RECITAL)
article_units = units(corpus, Level.ARTICLE)
print(f"\nunits: {len(recital_units)} recital-level, {len(article_units)} article-level")

a7 = next(u for u in article_units if u.unit_id == "a7")
print(f"\narticle unit {a7.unit_id} is the concatenation of its recitals "
      f"({len(a7.sentences)} sentences, keys {a7.sentence_keys[:2]}...)")

# canonical JSON round-trips to an identical corpus
text = serialize_corpus(corpus)
assert deserialize_corpus(text) == corpus
print(f"\ncanonical JSON round-trip OK ({len(text)} bytes, byte-stable)")
