"""Command-line entry point: parse -> vectorize -> match -> eval -> report.

One binary with subcommands ``parse``, ``match``, ``eval`` and
``pipeline``. Identical inputs always produce byte-identical reports:
nothing here is stochastic and no timestamps enter data files. Exit codes
partition the failure classes: 0 ok, 2 corpus, 3 backend, 4 gold,
64 usage.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus, Level, read_corpus_file, serialize_corpus, units
from .errors import CorpusError, GoldError, VectorizeError
from .evaluation import EvalConfig, evaluate, load_gold, write_eval_reports
from .similarity import (
    format_score,
    match_all,
    skipped_diagnostics,
    write_match_report,
)
from .vectorize import (
    RoutedStoreBackend,
    StoreBackend,
    TfIdfBackend,
    WordVecBackend,
    fit_tfidf,
    load_embedding_store,
    load_embedding_table,
)

EXIT_OK = 0
EXIT_CORPUS = 2
EXIT_BACKEND = 3
EXIT_GOLD = 4
EXIT_USAGE = 64

THREADS_ENV = "LEXALIGN_THREADS"


class UsageError(Exception):
    """Bad flag combination (distinct from bad input files)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    """Everything one match/eval run needs; validated before any IO.

    ``store_paths`` routes per-law stores: one path serves both sides
    (flat aliases must then not collide across the laws), two paths map
    to corpus A and corpus B respectively.
    """

    corpus_a_path: Path
    corpus_b_path: Path
    level: Level
    backend: str
    table_path: Path | None = None
    store_paths: tuple[Path, ...] = ()
    gold_path: Path | None = None
    k: int = 1
    output_dir: Path = Path(".")

    def validate(self) -> None:
        if self.backend not in ("tfidf", "wordvec", "store"):
            raise UsageError(f"unknown backend {self.backend!r}")
        if self.backend == "wordvec" and self.table_path is None:
            raise UsageError("backend 'wordvec' requires --table")
        if self.backend == "store" and not self.store_paths:
            raise UsageError("backend 'store' requires --store")
        if len(self.store_paths) > 2:
            raise UsageError("--store may be given at most twice (corpus A, corpus B)")
        if self.k < 1:
            raise UsageError(f"--k must be >= 1, got {self.k}")


def _threads_from_env() -> int | None:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"{THREADS_ENV} must be >= 0, got {value}")
    return value  # 0 = auto, handled by match_all


def _read_corpus(path: Path) -> Corpus:
    try:
        return read_corpus_file(path)
    except OSError as exc:
        raise CorpusError(f"cannot read corpus file {path}: {exc}") from exc


def _build_backend(config: RunConfig, units_a, units_b):
    if config.backend == "tfidf":
        model = fit_tfidf(
            units_a + units_b,
            scope=(config.corpus_a_path.stem, config.corpus_b_path.stem),
        )
        return TfIdfBackend(model)
    if config.backend == "wordvec":
        try:
            table = load_embedding_table(config.table_path)
        except OSError as exc:
            raise VectorizeError(f"cannot read table {config.table_path}: {exc}") from exc
        return WordVecBackend(table)
    stores = []
    for path in config.store_paths:
        try:
            stores.append(load_embedding_store(path))
        except OSError as exc:
            raise VectorizeError(f"cannot read store {path}: {exc}") from exc
    if len(stores) == 1:
        return StoreBackend(stores[0])
    law_a = units_a[0].law_id if units_a else ""
    law_b = units_b[0].law_id if units_b else ""
    if law_a == law_b:
        raise UsageError(
            "two --store files need distinct law ids to route between "
            f"(both corpora are {law_a!r})"
        )
    return RoutedStoreBackend({law_a: stores[0], law_b: stores[1]})


def _run_match(config: RunConfig):
    corpus_a = _read_corpus(config.corpus_a_path)
    corpus_b = _read_corpus(config.corpus_b_path)
    units_a = units(corpus_a, config.level)
    units_b = units(corpus_b, config.level)
    backend = _build_backend(config, units_a, units_b)
    matches = match_all(units_a, units_b, backend, max_workers=_threads_from_env())
    return corpus_a, corpus_b, backend, matches


def _match_report_path(config: RunConfig) -> Path:
    return config.output_dir / f"matches_{config.backend}_{config.level.value}.tsv"


def cmd_parse(args: argparse.Namespace) -> int:
    corpus = _read_corpus(Path(args.input))
    text = serialize_corpus(corpus)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_match(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    config.validate()
    config.output_dir.mkdir(parents=True, exist_ok=True)
    _, _, _, matches = _run_match(config)
    write_match_report(matches, _match_report_path(config))
    for line in skipped_diagnostics(matches):
        print(line, file=sys.stderr)
    return EXIT_OK


def _do_eval(config: RunConfig) -> int:
    if config.gold_path is None:
        raise UsageError("eval requires --gold")
    config.output_dir.mkdir(parents=True, exist_ok=True)
    corpus_a, corpus_b, backend, matches = _run_match(config)
    write_match_report(matches, _match_report_path(config))
    for line in skipped_diagnostics(matches):
        print(line, file=sys.stderr)
    try:
        gold = load_gold(config.gold_path, corpus_a, corpus_b, config.level)
    except OSError as exc:
        raise GoldError(f"cannot read gold file {config.gold_path}: {exc}") from exc
    report = evaluate(matches, gold, EvalConfig(k=config.k), backend_name=backend.name)
    stem = f"eval_{config.backend}_{config.level.value}"
    write_eval_reports(
        report,
        config.output_dir / f"{stem}.txt",
        config.output_dir / f"{stem}.tsv",
    )
    print(f"HIT@{config.k} {format_score(report.accuracy)}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    config.validate()
    return _do_eval(config)


def cmd_pipeline(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    config.validate()
    config.output_dir.mkdir(parents=True, exist_ok=True)
    for label, path in (("a", config.corpus_a_path), ("b", config.corpus_b_path)):
        corpus = _read_corpus(path)
        out = config.output_dir / f"corpus_{label}.json"
        out.write_text(serialize_corpus(corpus), encoding="utf-8")
    if config.gold_path is not None:
        return _do_eval(config)
    return cmd_match(args)


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        corpus_a_path=Path(args.corpus_a),
        corpus_b_path=Path(args.corpus_b),
        level=Level(args.level),
        backend=args.backend,
        table_path=Path(args.table) if args.table else None,
        store_paths=tuple(Path(p) for p in (args.store or [])),
        gold_path=Path(args.gold) if args.gold else None,
        k=args.k,
        output_dir=Path(args.out),
    )


def _add_run_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("corpus_a", help="corpus record file for the source law")
    sub.add_argument("corpus_b", help="corpus record file for the target law")
    sub.add_argument(
        "--level",
        choices=[level.value for level in Level],
        default=Level.ARTICLE.value,
        help="comparison granularity (default: article)",
    )
    sub.add_argument(
        "--backend",
        choices=["tfidf", "wordvec", "store"],
        default="tfidf",
        help="vectorization strategy (default: tfidf)",
    )
    sub.add_argument("--table", default=None, help="word-vector file (wordvec backend)")
    sub.add_argument(
        "--store",
        action="append",
        default=None,
        help=(
            "embedding-store file (store backend); give twice for "
            "per-law stores: corpus A first, corpus B second"
        ),
    )
    sub.add_argument("--gold", default=None, help="gold-label file")
    sub.add_argument("--k", type=int, default=1, help="HIT@K cutoff (default: 1)")
    sub.add_argument("--out", default="out", help="output directory (default: ./out)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lexalign",
        description=(
            "Parse GDPR-like laws into a canonical corpus, rank cross-corpus "
            "matches under interchangeable text vectorizers, and score the "
            "alignment against gold labels with HIT@K."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_parse = commands.add_parser(
        "parse", help="parse a corpus record file into canonical JSON"
    )
    p_parse.add_argument("input", help="corpus record file")
    p_parse.add_argument("--out", default=None, help="output file (default: stdout)")
    p_parse.set_defaults(func=cmd_parse)

    p_match = commands.add_parser(
        "match", help="rank corpus B's units for every unit of corpus A"
    )
    _add_run_flags(p_match)
    p_match.set_defaults(func=cmd_match)

    p_eval = commands.add_parser(
        "eval", help="match and score the ranking against gold labels"
    )
    _add_run_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_pipe = commands.add_parser(
        "pipeline", help="parse both corpora, match, and (with --gold) evaluate"
    )
    _add_run_flags(p_pipe)
    p_pipe.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lexalign: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorpusError as exc:
        print(f"lexalign: corpus error: {exc}", file=sys.stderr)
        return EXIT_CORPUS
    except VectorizeError as exc:
        print(f"lexalign: backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except GoldError as exc:
        print(f"lexalign: gold error: {exc}", file=sys.stderr)
        return EXIT_GOLD


if __name__ == "__main__":
    sys.exit(main())
