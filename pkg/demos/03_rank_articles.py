"""Rank one law's provisions against another by cosine similarity.

For each source unit every rankable target is scored once; results are
sorted by score with ties broken by ascending target id, so rankings are
deterministic across runs and input orderings.

Run from the repository root:  python3 demos/03_rank_articles.py
"""

from pathlib import Path

from lexalign import Level, TfIdfBackend, fit_tfidf, match_all, rank, read_corpus_file, units

DATA = Path(__file__).resolve().parent.parent / "data"

gdpr = read_corpus_file(DATA / "gdpr.tsv")
lgpd = read_corpus_file(DATA / "lgpd.tsv")
units_a = units(gdpr, Level.ARTICLE)
units_b = units(lgpd, Level.ARTICLE)
backend = TfIdfBackend(fit_tfidf(units_a + units_b))

titles_a = {a.alias: a.title for a in gdpr.iter_articles()}
titles_b = {a.alias: a.title for a in lgpd.iter_articles()}

for source_id in ("a7", "a9", "a33"):
    source = next(u for u in units_a if u.unit_id == source_id)
    ranked = rank(source, units_b, backend)
    print(f"\n{gdpr.law_id} {source_id} ({titles_a[source_id]}) -> top 5 of {len(ranked.candidates)}:")
    for position, candidate in enumerate(ranked.candidates[:5], start=1):
        title = titles_b.get(candidate.target_id, "")
        print(f"  {position}. {candidate.target_id:5} {candidate.score:.4f}  {title}")

# the full cross-corpus run: one ranking per source article, in order
matches = match_all(units_a, units_b, backend)
print(f"\nmatch_all: {len(matches)} ranked lists "
      f"({len(matches[0].candidates)} candidates each), none skipped: "
      f"{all(not m.skipped for m in matches)}")
