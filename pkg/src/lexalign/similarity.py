"""Cosine similarity and deterministic cross-corpus ranking.

For each unit of corpus A every rankable unit of corpus B is scored once,
sorted by score descending with ties broken by ascending target id. Units
whose vector has zero norm (all-OOV, empty after tokenization) are never
given a fabricated score; they land in a separate ``skipped`` list so the
exclusion stays auditable.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Unit
from .errors import DimMismatch, EmptyCorpus, VectorizeError
from .vectorize import SparseVector

logger = logging.getLogger(__name__)


class _NoVector:
    """Sentinel for 'no usable vector'; never enters a ranking."""

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return "NO_VECTOR"


NO_VECTOR = _NoVector()


@dataclass(frozen=True)
class MatchCandidate:
    source_id: str
    target_id: str
    score: float


@dataclass(frozen=True)
class RankedMatches:
    """All rankable targets for one source, best first.

    ``skipped`` holds the target ids excluded for lack of a usable vector
    (every target, if the source itself had none), sorted ascending.
    """

    source_id: str
    candidates: tuple[MatchCandidate, ...]
    skipped: tuple[str, ...] = ()


def cosine(a, b) -> float | _NoVector:
    """dot(a, b) / (|a| |b|), or NO_VECTOR when either norm is zero.

    Accepts two sparse vectors or two dense vectors of equal dimension.
    """
    if isinstance(a, SparseVector) and isinstance(b, SparseVector):
        norm_a, norm_b = a.norm(), b.norm()
        if norm_a == 0.0 or norm_b == 0.0:
            return NO_VECTOR
        return a.dot(b) / (norm_a * norm_b)
    if isinstance(a, np.ndarray) and isinstance(b, np.ndarray):
        if a.shape != b.shape:
            raise DimMismatch(f"dense vectors of dim {a.shape[0]} vs {b.shape[0]}")
        norm_a = float(np.sqrt(np.dot(a, a)))
        norm_b = float(np.sqrt(np.dot(b, b)))
        if norm_a == 0.0 or norm_b == 0.0:
            return NO_VECTOR
        return float(np.dot(a, b)) / (norm_a * norm_b)
    raise VectorizeError(
        f"cannot compare {type(a).__name__} with {type(b).__name__}"
    )


def _prepare(units: list[Unit], backend) -> list[tuple[str, object]]:
    return [(unit.unit_id, backend.vector(unit)) for unit in units]


def _rank_prepared(
    source_id: str, source_vector, prepared: list[tuple[str, object]]
) -> RankedMatches:
    candidates: list[MatchCandidate] = []
    skipped: list[str] = []
    for target_id, target_vector in prepared:
        score = cosine(source_vector, target_vector)
        if score is NO_VECTOR:
            skipped.append(target_id)
        else:
            candidates.append(
                MatchCandidate(source_id=source_id, target_id=target_id, score=score)
            )
    if skipped:
        logger.warning(
            "source %s: %d target(s) skipped (no usable vector)",
            source_id,
            len(skipped),
        )
    candidates.sort(key=lambda c: (-c.score, c.target_id))
    return RankedMatches(
        source_id=source_id,
        candidates=tuple(candidates),
        skipped=tuple(sorted(skipped)),
    )


def rank(source: Unit, targets: list[Unit], backend) -> RankedMatches:
    """Score every rankable target against one source unit.

    The result is deterministic across runs and across permutations of
    ``targets``: scores sort descending, exact ties sort by target id.
    Backend errors (missing sentence keys etc.) propagate with the
    offending unit named.
    """
    return _rank_prepared(
        source.unit_id, backend.vector(source), _prepare(targets, backend)
    )


def match_all(
    corpus_a_units: list[Unit],
    corpus_b_units: list[Unit],
    backend,
    max_workers: int | None = None,
) -> list[RankedMatches]:
    """Rank corpus B's units for every unit of corpus A, in A's order.

    Target vectors are computed once and shared read-only. ``max_workers``
    caps fan-out over sources (None = serial, 0 = one per CPU).
    """
    if not corpus_a_units or not corpus_b_units:
        raise EmptyCorpus("match_all requires non-empty unit lists on both sides")
    prepared = _prepare(corpus_b_units, backend)

    def one(source: Unit) -> RankedMatches:
        return _rank_prepared(source.unit_id, backend.vector(source), prepared)

    if max_workers is None or max_workers == 1:
        return [one(source) for source in corpus_a_units]
    workers = max_workers if max_workers > 0 else None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, corpus_a_units))


# --- match report file ------------------------------------------------------

_REPORT_HEADER = (
    "# lexalign match report",
    "# ties: equal scores are ordered by ascending target_id",
    "# source_id\trank\ttarget_id\tscore",
)


def format_score(score: float) -> str:
    """Nine significant digits, stable across platforms."""
    return f"{score:.9g}"


def render_match_report(matches: list[RankedMatches]) -> str:
    lines = list(_REPORT_HEADER)
    for ranked in matches:
        for position, candidate in enumerate(ranked.candidates, start=1):
            lines.append(
                f"{ranked.source_id}\t{position}\t{candidate.target_id}\t"
                f"{format_score(candidate.score)}"
            )
    return "\n".join(lines) + "\n"


def write_match_report(matches: list[RankedMatches], path: str | Path) -> None:
    Path(path).write_text(render_match_report(matches), encoding="utf-8")


def skipped_diagnostics(matches: list[RankedMatches]) -> list[str]:
    """One human-readable line per source that skipped targets."""
    out = []
    for ranked in matches:
        if ranked.skipped:
            out.append(
                f"{ranked.source_id}: skipped {len(ranked.skipped)} target(s) "
                f"without a usable vector: {', '.join(ranked.skipped)}"
            )
    return out
