"""lexalign: align GDPR-like data-protection laws.

Parses recital-level law exports into a canonical hierarchical corpus,
vectorizes comparable units under interchangeable backends (TF-IDF,
static word-embedding sums, file-supplied sentence-embedding stores),
ranks cross-corpus matches by cosine similarity, and scores alignments
against gold labels with HIT@K.
"""

from .corpus import (
    Corpus,
    Level,
    Unit,
    deserialize_corpus,
    load_corpus_json,
    parse_tabular,
    read_corpus_file,
    serialize_corpus,
    split_sentences,
    units,
    write_corpus_file,
)
from .evaluation import (
    EvalConfig,
    EvalReport,
    GoldLabelSet,
    evaluate,
    hit_at_k,
    is_match,
    load_gold,
    render_results_table,
)
from .similarity import (
    NO_VECTOR,
    MatchCandidate,
    RankedMatches,
    cosine,
    match_all,
    rank,
    write_match_report,
)
from .vectorize import (
    EmbeddingStore,
    EmbeddingTable,
    RoutedStoreBackend,
    SparseVector,
    StoreBackend,
    TfIdfBackend,
    TfIdfModel,
    WordVecBackend,
    embedding_sum_vector,
    fit_tfidf,
    idf,
    load_embedding_store,
    load_embedding_table,
    store_vector,
    tf,
    tfidf_vector,
    tokenize,
    write_embedding_store,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "Level",
    "Unit",
    "parse_tabular",
    "read_corpus_file",
    "units",
    "split_sentences",
    "serialize_corpus",
    "deserialize_corpus",
    "load_corpus_json",
    "write_corpus_file",
    "tokenize",
    "TfIdfModel",
    "SparseVector",
    "fit_tfidf",
    "tf",
    "idf",
    "tfidf_vector",
    "EmbeddingTable",
    "EmbeddingStore",
    "load_embedding_table",
    "embedding_sum_vector",
    "load_embedding_store",
    "write_embedding_store",
    "store_vector",
    "TfIdfBackend",
    "WordVecBackend",
    "StoreBackend",
    "RoutedStoreBackend",
    "cosine",
    "NO_VECTOR",
    "MatchCandidate",
    "RankedMatches",
    "rank",
    "match_all",
    "write_match_report",
    "GoldLabelSet",
    "EvalConfig",
    "EvalReport",
    "is_match",
    "hit_at_k",
    "evaluate",
    "load_gold",
    "render_results_table",
    "__version__",
]
