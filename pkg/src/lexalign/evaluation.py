"""Gold-label handling and HIT@K scoring.

A source unit scores a hit when any of its top-K ranked targets belongs
to its gold set. Accuracy is the mean hit over the labeled sources only
(gold sets cover a small hand-checked pilot subset, not the whole
corpus). Gold sets may accept several targets: "related to" is a
relation, not a bijection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, Level, units
from .errors import (
    EmptyGold,
    GoldError,
    MissingRanking,
    UnknownSourceId,
    UnknownTargetId,
    UnlabeledSource,
)
from .similarity import RankedMatches, format_score


@dataclass(frozen=True)
class GoldLabelSet:
    """Accepted target ids per source id, at one comparison level."""

    level: Level
    entries: dict[str, frozenset[str]]
    notes: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class EvalConfig:
    k: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class SourceOutcome:
    hit: int
    top_k: tuple[str, ...]
    gold_unrankable: bool = False


@dataclass(frozen=True)
class EvalReport:
    backend_name: str
    level: Level
    k: int
    per_source: dict[str, SourceOutcome]
    accuracy: float


def is_match(source_id: str, target_id: str, gold: GoldLabelSet) -> int:
    """1 iff the gold set of source_id accepts target_id."""
    targets = gold.entries.get(source_id)
    if targets is None:
        raise UnlabeledSource(f"source {source_id} is not labeled")
    return 1 if target_id in targets else 0


def hit_at_k(ranked: RankedMatches, gold: GoldLabelSet, k: int) -> int:
    """1 iff any of the top min(k, available) targets is gold-accepted."""
    if ranked.source_id not in gold.entries:
        raise UnlabeledSource(f"source {ranked.source_id} is not labeled")
    top = ranked.candidates[: max(k, 0)]
    return 1 if any(is_match(ranked.source_id, c.target_id, gold) for c in top) else 0


def evaluate(
    matches: list[RankedMatches],
    gold: GoldLabelSet,
    config: EvalConfig,
    backend_name: str = "",
) -> EvalReport:
    """Score every labeled source and average the hits.

    Sources whose gold targets were all excluded from ranking (zero
    vectors) score 0 and are flagged instead of being silently dropped,
    so unrankable units can never inflate accuracy.
    """
    by_source = {ranked.source_id: ranked for ranked in matches}
    for source_id in gold.entries:
        if source_id not in by_source:
            raise MissingRanking(f"labeled source {source_id} has no ranking")
    per_source: dict[str, SourceOutcome] = {}
    hits = 0
    for ranked in matches:
        if ranked.source_id not in gold.entries:
            continue
        hit = hit_at_k(ranked, gold, config.k)
        hits += hit
        candidate_ids = {c.target_id for c in ranked.candidates}
        unrankable = not (gold.entries[ranked.source_id] & candidate_ids)
        per_source[ranked.source_id] = SourceOutcome(
            hit=hit,
            top_k=tuple(c.target_id for c in ranked.candidates[: config.k]),
            gold_unrankable=unrankable,
        )
    return EvalReport(
        backend_name=backend_name,
        level=gold.level,
        k=config.k,
        per_source=per_source,
        accuracy=hits / len(gold.entries),
    )


# --- gold-label files --------------------------------------------------------


def load_gold(
    path: str | Path, corpus_a: Corpus, corpus_b: Corpus, level: Level
) -> GoldLabelSet:
    """Load a gold-label file and resolve every id against both corpora.

    Lines are ``source_id<TAB>target_id_1,target_id_2,...<TAB>note`` with
    ``#`` comments ignored; the note field is optional.
    """
    path = Path(path)
    level = Level(level)
    valid_sources = {u.unit_id for u in units(corpus_a, level)}
    valid_targets = {u.unit_id for u in units(corpus_b, level)}
    entries: dict[str, frozenset[str]] = {}
    notes: dict[str, str] = {}
    for lineno, line in enumerate(
        path.read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            raise GoldError(
                f"{path}:{lineno}: expected 'source_id<TAB>targets[<TAB>note]'"
            )
        source_id = fields[0].strip()
        targets = frozenset(t.strip() for t in fields[1].split(",") if t.strip())
        note = fields[2].strip() if len(fields) > 2 else ""
        if source_id not in valid_sources:
            raise UnknownSourceId(
                f"{path}:{lineno}: unknown source id {source_id!r} "
                f"at {level.value} level",
                line=lineno,
            )
        if not targets:
            raise GoldError(f"{path}:{lineno}: empty target set for {source_id}")
        for target_id in sorted(targets):
            if target_id not in valid_targets:
                raise UnknownTargetId(
                    f"{path}:{lineno}: unknown target id {target_id!r} "
                    f"at {level.value} level",
                    line=lineno,
                )
        if source_id in entries:
            raise GoldError(f"{path}:{lineno}: duplicate source id {source_id}")
        entries[source_id] = targets
        if note:
            notes[source_id] = note
    if not entries:
        raise EmptyGold(f"{path}: no gold entries")
    return GoldLabelSet(level=level, entries=entries, notes=notes)


# --- report rendering ---------------------------------------------------------


def render_eval_machine(report: EvalReport) -> str:
    """Line records for CI diffing; fully deterministic."""
    lines = [
        f"backend\t{report.backend_name}",
        f"level\t{report.level.value}",
        f"k\t{report.k}",
    ]
    for source_id, outcome in report.per_source.items():
        lines.append(
            f"source\t{source_id}\t{outcome.hit}\t{','.join(outcome.top_k)}\t"
            f"{int(outcome.gold_unrankable)}"
        )
    lines.append(f"accuracy\t{format_score(report.accuracy)}")
    return "\n".join(lines) + "\n"


def render_results_table(reports: list[EvalReport]) -> str:
    """Level x Algorithm x HIT@K table over one or more eval reports."""
    if not reports:
        return ""
    k = reports[0].k
    rows = [("Level", "Algorithm", f"HIT@{k}")]
    for report in reports:
        rows.append(
            (report.level.value, report.backend_name, f"{report.accuracy:.2f}")
        )
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    sep = "-+-".join("-" * w for w in widths)
    out = []
    for index, row in enumerate(rows):
        out.append(" | ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
        if index == 0:
            out.append(sep)
    return "\n".join(out) + "\n"


def render_eval_human(report: EvalReport) -> str:
    """Human-readable report: summary table plus per-source outcomes."""
    lines = [render_results_table([report]).rstrip("\n"), ""]
    for source_id, outcome in report.per_source.items():
        status = "hit" if outcome.hit else "miss"
        flag = "  [gold targets unrankable]" if outcome.gold_unrankable else ""
        lines.append(
            f"{source_id}: {status}, top-{report.k} = "
            f"{', '.join(outcome.top_k) or '(none)'}{flag}"
        )
    lines.append("")
    lines.append(f"HIT@{report.k} accuracy: {format_score(report.accuracy)}")
    return "\n".join(lines) + "\n"


def write_eval_reports(report: EvalReport, human_path: str | Path, machine_path: str | Path) -> None:
    Path(human_path).write_text(render_eval_human(report), encoding="utf-8")
    Path(machine_path).write_text(render_eval_machine(report), encoding="utf-8")
