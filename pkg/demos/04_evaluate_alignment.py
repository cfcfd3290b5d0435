"""Score the cross-law alignment against the shipped gold labels.

HIT@K gives each labeled source a 1 when any of its top-K retrieved
targets is gold-accepted; accuracy is the mean over labeled sources.
The summary table mirrors the Level x Algorithm x HIT@1 layout used in
the reference results.

Run from the repository root:  python3 demos/04_evaluate_alignment.py
"""

from pathlib import Path

from lexalign import (
    EvalConfig,
    Level,
    TfIdfBackend,
    evaluate,
    fit_tfidf,
    load_gold,
    match_all,
    read_corpus_file,
    render_results_table,
    units,
)

DATA = Path(__file__).resolve().parent.parent / "data"

gdpr = read_corpus_file(DATA / "gdpr.tsv")
lgpd = read_corpus_file(DATA / "lgpd.tsv")

reports = []
for level, gold_file in (
    (Level.RECITAL, "gold_recitals.tsv"),
    (Level.ARTICLE, "gold_articles.tsv"),
):
    units_a = units(gdpr, level)
    units_b = units(lgpd, level)
    backend = TfIdfBackend(fit_tfidf(units_a + units_b))
    matches = match_all(units_a, units_b, backend)
    gold = load_gold(DATA / "gold" / gold_file, gdpr, lgpd, level)
    report = evaluate(matches, gold, EvalConfig(k=1), backend_name=backend.name)
    reports.append(report)

    print(f"\n{level.value} level, {len(gold.entries)} labeled sources:")
    for source_id, outcome in report.per_source.items():
        mark = "hit " if outcome.hit else "miss"
        print(f"  {mark} {source_id:7} top-1 = {outcome.top_k[0]:8} "
              f"gold = {{{', '.join(sorted(gold.entries[source_id]))}}}")

print()
print(render_results_table(reports))
