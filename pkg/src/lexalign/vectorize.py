"""Turn units into vectors under interchangeable backends.

Four strategies share one contract: TF-IDF produces sparse term-weight
maps; the static word-embedding backend and the two file-supplied
sentence-embedding backends produce fixed-dimension dense vectors. Every
backend builds a unit vector by summing per-sentence vectors, so article
vectors decompose exactly into their recitals' vectors.

All fitted/loaded state (models, tables, stores) is immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Level, Unit
from .errors import (
    BadKey,
    DimMismatch,
    DuplicateKey,
    EmptyCorpus,
    EmptySentence,
    EmptyUnit,
    LevelMismatch,
    MalformedLine,
    MissingSentence,
    MixedLevels,
    VectorizeError,
)

logger = logging.getLogger(__name__)

# Unicode-aware: runs of letters/digits, underscore excluded. Digits are
# kept ("art 5 1"); downweighting of ubiquitous terms is left to idf, so
# there is no stopword list and no stemming.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_STORE_HEADER_RE = re.compile(r"^#dim=(\d+) backend=(\S+)$")
_STORE_KEY_RE = re.compile(r"^(.+)#(\d+)$")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric boundaries."""
    return _TOKEN_RE.findall(text.lower())


# --- TF-IDF ---------------------------------------------------------------


@dataclass(frozen=True)
class TfIdfModel:
    """Document frequencies fitted over a collection of units.

    ``doc_count`` is the number of units fitted on; ``doc_freq[t]`` counts
    the units whose token set contains t, so 1 <= df <= doc_count and
    idf is never negative.
    """

    doc_count: int
    doc_freq: dict[str, int]
    fitted_level: Level
    fitted_scope: tuple[str, ...] = ()


@dataclass(frozen=True)
class SparseVector:
    """Term-weight map with no stored zeros and finite values only."""

    weights: dict[str, float]

    def __post_init__(self) -> None:
        cleaned = {}
        for term, weight in self.weights.items():
            if not math.isfinite(weight):
                raise VectorizeError(f"non-finite weight for term {term!r}")
            if weight != 0.0:
                cleaned[term] = weight
        object.__setattr__(self, "weights", cleaned)

    def norm(self) -> float:
        return math.sqrt(sum(self.weights[t] ** 2 for t in sorted(self.weights)))

    def dot(self, other: "SparseVector") -> float:
        common = self.weights.keys() & other.weights.keys()
        return sum(self.weights[t] * other.weights[t] for t in sorted(common))


def fit_tfidf(units: list[Unit], scope: tuple[str, ...] = ()) -> TfIdfModel:
    """Count document frequencies over the given units.

    The fit is order-invariant: permuting ``units`` yields an identical
    model. All units must share one level.
    """
    if not units:
        raise EmptyCorpus("cannot fit a tf-idf model on zero units")
    level = units[0].level
    if any(u.level != level for u in units):
        raise MixedLevels("units passed to fit_tfidf mix recital and article level")
    doc_freq: dict[str, int] = {}
    for unit in units:
        for term in set(tokenize(unit.text)):
            doc_freq[term] = doc_freq.get(term, 0) + 1
    return TfIdfModel(
        doc_count=len(units),
        doc_freq=doc_freq,
        fitted_level=level,
        fitted_scope=tuple(scope),
    )


def tf(term: str, sentence_tokens: list[str]) -> float:
    """Raw count of term divided by the sentence's token count."""
    if not sentence_tokens:
        raise EmptySentence("term frequency over an empty token list")
    return sentence_tokens.count(term) / len(sentence_tokens)


def idf(term: str, model: TfIdfModel) -> float:
    """Natural log of N/df; unseen terms weigh zero by convention."""
    df = model.doc_freq.get(term)
    if df is None:
        return 0.0
    return math.log(model.doc_count / df)


def tfidf_vector(unit: Unit, model: TfIdfModel) -> SparseVector:
    """Sum per-sentence tf-idf vectors into one sparse unit vector.

    Each sentence contributes tf over that sentence times idf from the
    model; zero weights (ubiquitous or unseen terms) are dropped.
    """
    if unit.level != model.fitted_level:
        raise LevelMismatch(
            f"unit {unit.unit_id} is {unit.level.value}-level but the model "
            f"was fitted at {model.fitted_level.value} level"
        )
    weights: dict[str, float] = {}
    saw_tokens = False
    for sentence in unit.sentences:
        tokens = tokenize(sentence)
        if not tokens:
            continue
        saw_tokens = True
        for term in set(tokens):
            weight = tf(term, tokens) * idf(term, model)
            weights[term] = weights.get(term, 0.0) + weight
    if not saw_tokens:
        raise EmptyUnit(f"unit {unit.unit_id} has no tokens")
    return SparseVector(weights)


# --- static word embeddings ------------------------------------------------


@dataclass(frozen=True)
class EmbeddingTable:
    """Static token -> vector map; every vector has length ``dim``."""

    dim: int
    entries: dict[str, np.ndarray]


@dataclass(frozen=True)
class EmbeddingSum:
    """Result of summing a unit's token embeddings.

    A unit whose tokens are all out of vocabulary yields the zero vector
    with ``all_oov`` set; the ranking layer decides what to do with it.
    """

    vector: np.ndarray
    oov_count: int
    all_oov: bool


def load_embedding_table(path: str | Path) -> EmbeddingTable:
    """Load a word-vector text file (``token v1 v2 ... vd`` per line)."""
    path = Path(path)
    entries: dict[str, np.ndarray] = {}
    dim: int | None = None
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split(" ")
            if len(fields) < 2:
                raise MalformedLine(
                    f"{path}:{lineno}: expected 'token v1 ... vd'", line=lineno
                )
            token, values = fields[0], fields[1:]
            if not token:
                raise MalformedLine(f"{path}:{lineno}: empty token", line=lineno)
            try:
                vector = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError:
                raise MalformedLine(
                    f"{path}:{lineno}: non-numeric vector value", line=lineno
                ) from None
            if not np.all(np.isfinite(vector)):
                raise MalformedLine(
                    f"{path}:{lineno}: non-finite vector value", line=lineno
                )
            if dim is None:
                dim = vector.shape[0]
            elif vector.shape[0] != dim:
                raise DimMismatch(
                    f"{path}:{lineno}: expected {dim} values, got {vector.shape[0]}"
                )
            if token in entries:
                logger.warning("duplicate token %r at %s:%d; last wins", token, path, lineno)
            vector.setflags(write=False)
            entries[token] = vector
    if dim is None:
        raise MalformedLine(f"{path}: no vectors found")
    return EmbeddingTable(dim=dim, entries=entries)


def embedding_sum_vector(unit: Unit, table: EmbeddingTable) -> EmbeddingSum:
    """Sum the table vectors of a unit's tokens, sentence by sentence.

    Out-of-vocabulary tokens are skipped and counted. Accumulating
    per-sentence partial sums keeps unit vectors exactly equal to the sum
    of their sentence vectors.
    """
    total = np.zeros(table.dim, dtype=np.float64)
    oov = 0
    in_vocab = 0
    for sentence in unit.sentences:
        partial = np.zeros(table.dim, dtype=np.float64)
        for token in tokenize(sentence):
            vector = table.entries.get(token)
            if vector is None:
                oov += 1
            else:
                partial += vector
                in_vocab += 1
        total += partial
    return EmbeddingSum(vector=total, oov_count=oov, all_oov=in_vocab == 0)


# --- sentence-embedding stores ---------------------------------------------


@dataclass(frozen=True)
class EmbeddingStore:
    """Sentence embeddings keyed by ``<unit_id>#<sentence_index>``.

    The file format is the interchange contract with the batch exporter:
    a ``#dim=<d> backend=<name>`` header, then one tab-separated line per
    sentence.
    """

    backend_name: str
    dim: int
    entries: dict[str, np.ndarray] = field(repr=False)


def load_embedding_store(path: str | Path) -> EmbeddingStore:
    """Load and validate an embedding-store file."""
    path = Path(path)
    entries: dict[str, np.ndarray] = {}
    header: tuple[int, str] | None = None
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if header is None:
                match = _STORE_HEADER_RE.match(line)
                if not match:
                    raise MalformedLine(
                        f"{path}:{lineno}: expected '#dim=<d> backend=<name>' header",
                        line=lineno,
                    )
                header = (int(match.group(1)), match.group(2))
                continue
            key, sep, rest = line.partition("\t")
            if not sep:
                raise MalformedLine(
                    f"{path}:{lineno}: expected '<key><TAB><values>'", line=lineno
                )
            if not _STORE_KEY_RE.match(key):
                raise BadKey(f"{path}:{lineno}: key {key!r} is not unit_id#index")
            if key in entries:
                raise DuplicateKey(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                vector = np.array(
                    [float(v) for v in rest.split(" ") if v], dtype=np.float64
                )
            except ValueError:
                raise MalformedLine(
                    f"{path}:{lineno}: non-numeric vector value", line=lineno
                ) from None
            if vector.shape[0] != header[0]:
                raise DimMismatch(
                    f"{path}:{lineno}: expected {header[0]} values, "
                    f"got {vector.shape[0]}"
                )
            if not np.all(np.isfinite(vector)):
                raise MalformedLine(
                    f"{path}:{lineno}: non-finite vector value", line=lineno
                )
            vector.setflags(write=False)
            entries[key] = vector
    if header is None:
        raise MalformedLine(f"{path}: missing store header")
    return EmbeddingStore(backend_name=header[1], dim=header[0], entries=entries)


def write_embedding_store(store: EmbeddingStore, path: str | Path) -> None:
    """Write a store in the interchange format (entry order preserved)."""
    lines = [f"#dim={store.dim} backend={store.backend_name}"]
    for key, vector in store.entries.items():
        values = " ".join(f"{v:.17g}" for v in vector)
        lines.append(f"{key}\t{values}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def store_vector(unit: Unit, store: EmbeddingStore) -> np.ndarray:
    """Sum the stored sentence vectors of a unit.

    Recital units look up their own sentence keys; article units sum over
    their constituent recitals' sentence vectors (grouped per recital so
    that the article vector equals the sum of its recital vectors exactly).
    """
    total = np.zeros(store.dim, dtype=np.float64)
    group: np.ndarray | None = None
    group_prefix: str | None = None
    for key in unit.sentence_keys:
        vector = store.entries.get(key)
        if vector is None:
            raise MissingSentence(key, unit_id=unit.unit_id)
        prefix = key.rsplit("#", 1)[0]
        if prefix != group_prefix:
            if group is not None:
                total += group
            group = np.zeros(store.dim, dtype=np.float64)
            group_prefix = prefix
        group += vector
    if group is not None:
        total += group
    return total


# --- backend adapters for the ranking layer ---------------------------------


class TfIdfBackend:
    """Sparse tf-idf vectors under a shared fitted model."""

    def __init__(self, model: TfIdfModel):
        self.model = model
        self.name = "tfidf"

    def vector(self, unit: Unit) -> SparseVector:
        try:
            return tfidf_vector(unit, self.model)
        except EmptyUnit:
            return SparseVector({})


class WordVecBackend:
    """Dense sums of static word embeddings; all-OOV units go to zero."""

    def __init__(self, table: EmbeddingTable):
        self.table = table
        self.name = "wordvec"

    def vector(self, unit: Unit) -> np.ndarray:
        return embedding_sum_vector(unit, self.table).vector


class StoreBackend:
    """Dense sums of file-supplied sentence embeddings (one store)."""

    def __init__(self, store: EmbeddingStore):
        self.store = store
        self.name = store.backend_name

    def vector(self, unit: Unit) -> np.ndarray:
        return store_vector(unit, self.store)


class RoutedStoreBackend:
    """Per-law sentence-embedding stores for cross-corpus runs.

    Flat unit aliases like ``a1.r1`` are unique only within one law, so a
    run comparing two laws routes each unit to its own law's store.
    """

    def __init__(self, stores: dict[str, EmbeddingStore]):
        if not stores:
            raise VectorizeError("no stores to route between")
        dims = {store.dim for store in stores.values()}
        if len(dims) > 1:
            raise DimMismatch(f"stores disagree on dimension: {sorted(dims)}")
        self.stores = dict(stores)
        names = sorted({store.backend_name for store in stores.values()})
        self.name = names[0] if len(names) == 1 else "+".join(names)

    def vector(self, unit: Unit) -> np.ndarray:
        store = self.stores.get(unit.law_id)
        if store is None:
            raise VectorizeError(
                f"no store routed for law {unit.law_id!r} (unit {unit.unit_id})"
            )
        return store_vector(unit, store)
