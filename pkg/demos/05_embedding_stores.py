"""Exchange sentence embeddings through store files and rank with them.

A store file carries one vector per (recital, sentence) pair under the
key `<recital_alias>#<sentence_index>`. Real stores come from a batch
exporter running a pretrained sentence encoder; this demo fabricates
deterministic toy vectors so the whole workflow runs offline. Article
vectors are never stored: they are derived by summing recital vectors,
so both levels stay consistent by construction.

Run from the repository root:  python3 demos/05_embedding_stores.py
"""

import hashlib
import tempfile
from pathlib import Path

import numpy as np

from lexalign import (
    EmbeddingStore,
    Level,
    RoutedStoreBackend,
    StoreBackend,
    load_embedding_store,
    rank,
    read_corpus_file,
    store_vector,
    units,
    write_embedding_store,
)

DATA = Path(__file__).resolve().parent.parent / "data"
DIM = 16


def toy_sentence_vector(sentence: str) -> np.ndarray:
    """Deterministic stand-in for a sentence encoder (demo only)."""
    digest = hashlib.blake2b(sentence.encode("utf-8"), digest_size=DIM * 2).digest()
    raw = np.frombuffer(digest, dtype=np.uint16).astype(np.float64)
    return (raw / 65535.0) - 0.5


def build_store(corpus) -> EmbeddingStore:
    entries = {}
    for unit in units(corpus, Level.RECITAL):
        for key, sentence in zip(unit.sentence_keys, unit.sentences):
            entries[key] = toy_sentence_vector(sentence)
    return EmbeddingStore(backend_name="toy", dim=DIM, entries=entries)


gdpr = read_corpus_file(DATA / "gdpr.tsv")
lgpd = read_corpus_file(DATA / "lgpd.tsv")

workdir = Path(tempfile.mkdtemp(prefix="lexalign_demo_"))
stores = {}
for corpus in (gdpr, lgpd):
    store = build_store(corpus)
    path = workdir / f"{corpus.law_id}.store.tsv"
    write_embedding_store(store, path)
    stores[corpus.law_id] = load_embedding_store(path)
    print(f"{corpus.law_id}: wrote and reloaded {len(store.entries)} sentence vectors "
          f"(dim {store.dim}) via {path.name}")

# flat unit aliases repeat across laws, so a cross-law run routes each
# unit to its own law's store
backend = RoutedStoreBackend({"gdpr": stores["gdpr"], "lgpd": stores["lgpd"]})
units_a = units(gdpr, Level.ARTICLE)
units_b = units(lgpd, Level.ARTICLE)
source = next(u for u in units_a if u.unit_id == "a5")
ranked = rank(source, units_b, backend)
print(f"\nstore-backend top 3 for {source.unit_id} (toy vectors, not meaningful):")
for position, candidate in enumerate(ranked.candidates[:3], start=1):
    print(f"  {position}. {candidate.target_id:5} {candidate.score:.4f}")

# article vectors decompose exactly into their recitals' vectors
single = StoreBackend(stores["gdpr"])
recital_units = {u.unit_id: u for u in units(gdpr, Level.RECITAL)}
article = next(u for u in units_a if u.unit_id == "a7")
total = np.zeros(DIM)
for unit_id, unit in recital_units.items():
    if unit_id.startswith(article.unit_id + "."):
        total = total + store_vector(unit, stores["gdpr"])
assert np.array_equal(single.vector(article), total)
print(f"\narticle {article.unit_id} vector == sum of its recital vectors: exact")
