"""Exception hierarchy shared by all lexalign modules.

Errors are grouped by pipeline stage so the CLI can map them onto its
exit-code classes: corpus problems, backend (vectorization/similarity)
problems, and gold-label problems.
"""


class LexalignError(Exception):
    """Base class for every error raised by this package."""


# --- corpus stage ------------------------------------------------------


class CorpusError(LexalignError):
    """Invalid corpus input or a violated corpus invariant."""


class EmptyText(CorpusError):
    """A row's text is blank after whitespace normalization."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class DuplicateRecitalId(CorpusError):
    """Two rows map to the same (chapter, section, article, recital) slot."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class MalformedRow(CorpusError):
    """A record line does not match the corpus record schema."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


# --- vectorization stage -----------------------------------------------


class VectorizeError(LexalignError):
    """Invalid vectorizer input or a backend resource problem."""


class EmptyCorpus(VectorizeError):
    """A model was asked to fit on zero units."""


class MixedLevels(VectorizeError):
    """Units passed to a single fit are not all at the same level."""


class LevelMismatch(VectorizeError):
    """A unit was vectorized under a model fitted at another level."""


class EmptySentence(VectorizeError):
    """Term frequency requested over an empty token list."""


class EmptyUnit(VectorizeError):
    """A unit has no tokens at all."""


class DimMismatch(VectorizeError):
    """Vectors of inconsistent dimension in a file or a comparison."""


class MalformedLine(VectorizeError):
    """An embedding file line cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class BadKey(VectorizeError):
    """An embedding-store key is not of the form unit_id#index."""


class DuplicateKey(VectorizeError):
    """The same sentence key appears twice in an embedding store."""


class MissingSentence(VectorizeError):
    """A unit's sentence key is absent from the embedding store."""

    def __init__(self, key: str, unit_id: str | None = None):
        self.key = key
        self.unit_id = unit_id
        where = f" (unit {unit_id})" if unit_id else ""
        super().__init__(f"missing sentence key {key!r}{where}")


# --- evaluation stage ----------------------------------------------------


class GoldError(LexalignError):
    """Invalid gold-label input or evaluation precondition failure."""


class EmptyGold(GoldError):
    """A gold-label file contains no entries."""


class UnknownSourceId(GoldError):
    """A gold source id does not exist in corpus A at the gold level."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class UnknownTargetId(GoldError):
    """A gold target id does not exist in corpus B at the gold level."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class UnlabeledSource(GoldError):
    """A source id was scored against a gold set that does not label it."""


class MissingRanking(GoldError):
    """A labeled source has no ranked candidate list."""
