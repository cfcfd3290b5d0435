"""Inspect TF-IDF vectors: document frequencies, idf, and unit weights.

The model is fitted over the union of both laws' units so that weights
are comparable across corpora. A unit's vector is the sum of its
per-sentence tf-idf vectors; terms appearing in every document weigh
exactly zero and vanish.

Run from the repository root:  python3 demos/02_tfidf_vectors.py
"""

from pathlib import Path

from lexalign import Level, fit_tfidf, idf, read_corpus_file, tfidf_vector, units

DATA = Path(__file__).resolve().parent.parent / "data"

gdpr = read_corpus_file(DATA / "gdpr.tsv")
lgpd = read_corpus_file(DATA / "lgpd.tsv")

units_a = units(gdpr, Level.ARTICLE)
units_b = units(lgpd, Level.ARTICLE)
model = fit_tfidf(units_a + units_b, scope=("gdpr", "lgpd"))
print(f"fitted on {model.doc_count} article units, vocabulary {len(model.doc_freq)} terms")

print("\nmost common terms (document frequency, idf):")
for term, df in sorted(model.doc_freq.items(), key=lambda kv: -kv[1])[:8]:
    print(f"  {term:12} df={df:4}  idf={idf(term, model):.4f}")

print("\nrarest terms:")
for term, df in sorted(model.doc_freq.items(), key=lambda kv: (kv[1], kv[0]))[:5]:
    print(f"  {term:12} df={df:4}  idf={idf(term, model):.4f}")

a9 = next(u for u in units_a if u.unit_id == "a9")
vec = tfidf_vector(a9, model)
print(f"\n{a9.unit_id} ({gdpr.law_id}) vector has {len(vec.weights)} weighted terms; top 10:")
for term, weight in sorted(vec.weights.items(), key=lambda kv: -kv[1])[:10]:
    print(f"  {term:15} {weight:.4f}")

# idf filters ubiquitous words without any stopword list
ubiquitous = [t for t, df in model.doc_freq.items() if df == model.doc_count]
print(f"\nterms present in every unit (weight always exactly 0): {ubiquitous or 'none'}")
assert not set(ubiquitous) & set(vec.weights)
