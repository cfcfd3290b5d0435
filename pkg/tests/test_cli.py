"""End-to-end CLI behavior: subcommands, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from lexalign.cli import (
    EXIT_BACKEND,
    EXIT_CORPUS,
    EXIT_GOLD,
    EXIT_OK,
    EXIT_USAGE,
    main,
)

from conftest import FIXTURES

ALPHA = str(FIXTURES / "mini_alpha.tsv")
BETA = str(FIXTURES / "mini_beta.tsv")
GOLD = str(FIXTURES / "gold_mini.tsv")
STORE_A = str(FIXTURES / "store_alpha.tsv")
STORE_B = str(FIXTURES / "store_beta.tsv")
TABLE = str(FIXTURES / "wordvec_dim3.txt")


class TestParse:
    def test_happy_path(self, tmp_path, capsys):
        out = tmp_path / "alpha.json"
        assert main(["parse", ALPHA, "--out", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["law_id"] == "mini_alpha"
        assert doc["chapters"][0]["id"] == "c1"

    def test_stdout_default(self, capsys):
        assert main(["parse", ALPHA]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["law_id"] == "mini_alpha"

    def test_blank_text_row_exits_2_naming_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text(
            "chapter\tsection\tarticle\trecital\ttitle\ttext\n"
            "1\t\t1\t1\t\tok text\n"
            "1\t\t1\t2\t\t \n",
            encoding="utf-8",
        )
        assert main(["parse", str(bad)]) == EXIT_CORPUS
        err = capsys.readouterr().err
        assert "line 3" in err

    def test_missing_file_exits_2(self, capsys):
        assert main(["parse", "/nonexistent.tsv"]) == EXIT_CORPUS


class TestMatch:
    def test_tfidf_article_block_count(self, tmp_path, capsys):
        code = main(
            ["match", ALPHA, BETA, "--level", "article", "--backend", "tfidf",
             "--out", str(tmp_path)]
        )
        assert code == EXIT_OK
        report = (tmp_path / "matches_tfidf_article.tsv").read_text(encoding="utf-8")
        records = [l for l in report.splitlines() if not l.startswith("#")]
        sources = {r.split("\t")[0] for r in records}
        assert sources == {"a1", "a2", "a3"}

    def test_store_without_store_flag_is_usage_error(self, tmp_path, capsys):
        code = main(
            ["match", ALPHA, BETA, "--backend", "store", "--out", str(tmp_path)]
        )
        assert code == EXIT_USAGE

    def test_wordvec_without_table_is_usage_error(self, tmp_path):
        code = main(
            ["match", ALPHA, BETA, "--backend", "wordvec", "--out", str(tmp_path)]
        )
        assert code == EXIT_USAGE

    def test_wordvec_dim_mismatch_exits_3(self, tmp_path, capsys):
        table = tmp_path / "broken.txt"
        table.write_text("a 1 2 3\nb 1 2\n", encoding="utf-8")
        code = main(
            ["match", ALPHA, BETA, "--backend", "wordvec", "--table", str(table),
             "--out", str(tmp_path)]
        )
        assert code == EXIT_BACKEND
        assert "backend error" in capsys.readouterr().err

    def test_store_missing_sentence_exits_3(self, tmp_path, capsys):
        truncated = tmp_path / "partial.tsv"
        lines = (FIXTURES / "store_alpha.tsv").read_text(encoding="utf-8").splitlines()
        truncated.write_text("\n".join(lines[:3]) + "\n", encoding="utf-8")
        code = main(
            ["match", ALPHA, ALPHA, "--level", "recital", "--backend", "store",
             "--store", str(truncated), "--out", str(tmp_path)]
        )
        assert code == EXIT_BACKEND

    def test_dual_store_recital_match(self, tmp_path, capsys):
        code = main(
            ["match", ALPHA, BETA, "--level", "recital", "--backend", "store",
             "--store", STORE_A, "--store", STORE_B, "--out", str(tmp_path)]
        )
        assert code == EXIT_OK
        report = (tmp_path / "matches_store_recital.tsv").read_text(encoding="utf-8")
        records = [l for l in report.splitlines() if not l.startswith("#")]
        # 5 alpha recitals x 4 beta recitals, none skipped
        assert len(records) == 20

    def test_single_store_self_comparison(self, tmp_path, capsys):
        code = main(
            ["match", ALPHA, ALPHA, "--level", "recital", "--backend", "store",
             "--store", STORE_A, "--out", str(tmp_path)]
        )
        assert code == EXIT_OK
        report = (tmp_path / "matches_store_recital.tsv").read_text(encoding="utf-8")
        top = [
            l for l in report.splitlines()
            if not l.startswith("#") and l.split("\t")[1] == "1"
        ]
        for line in top:
            source, _, target, score = line.split("\t")
            assert source == target
            assert score == "1"


class TestEval:
    def test_happy_path_prints_final_hit_line(self, tmp_path, capsys):
        code = main(
            ["eval", ALPHA, BETA, "--level", "article", "--backend", "tfidf",
             "--gold", GOLD, "--k", "1", "--out", str(tmp_path)]
        )
        assert code == EXIT_OK
        out_lines = capsys.readouterr().out.strip().splitlines()
        assert out_lines[-1].startswith("HIT@1 ")
        accuracy = float(out_lines[-1].split()[1])
        assert 0.0 <= accuracy <= 1.0
        assert (tmp_path / "eval_tfidf_article.txt").exists()
        assert (tmp_path / "eval_tfidf_article.tsv").exists()

    def test_eval_without_gold_is_usage_error(self, tmp_path):
        code = main(
            ["eval", ALPHA, BETA, "--backend", "tfidf", "--out", str(tmp_path)]
        )
        assert code == EXIT_USAGE

    def test_bad_gold_exits_4(self, tmp_path, capsys):
        bad = tmp_path / "gold.tsv"
        bad.write_text("a999\ta1\n", encoding="utf-8")
        code = main(
            ["eval", ALPHA, BETA, "--backend", "tfidf", "--gold", str(bad),
             "--out", str(tmp_path)]
        )
        assert code == EXIT_GOLD

    def test_exhaustive_k_reaches_one(self, tmp_path, capsys):
        code = main(
            ["eval", ALPHA, BETA, "--level", "article", "--backend", "tfidf",
             "--gold", GOLD, "--k", "3", "--out", str(tmp_path)]
        )
        assert code == EXIT_OK
        final = capsys.readouterr().out.strip().splitlines()[-1]
        assert final == "HIT@3 1"


class TestPipeline:
    def test_two_runs_byte_identical(self, tmp_path, capsys):
        outputs = []
        for name in ("run1", "run2"):
            out = tmp_path / name
            code = main(
                ["pipeline", ALPHA, BETA, "--level", "article", "--backend",
                 "tfidf", "--gold", GOLD, "--out", str(out)]
            )
            assert code == EXIT_OK
            outputs.append(
                {
                    p.name: p.read_bytes()
                    for p in sorted(out.iterdir())
                }
            )
        assert outputs[0].keys() == outputs[1].keys()
        assert set(outputs[0]) == {
            "corpus_a.json", "corpus_b.json", "matches_tfidf_article.tsv",
            "eval_tfidf_article.txt", "eval_tfidf_article.tsv",
        }
        assert outputs[0] == outputs[1]

    def test_pipeline_without_gold_stops_after_match(self, tmp_path, capsys):
        out = tmp_path / "nogold"
        code = main(
            ["pipeline", ALPHA, BETA, "--backend", "tfidf", "--out", str(out)]
        )
        assert code == EXIT_OK
        names = {p.name for p in out.iterdir()}
        assert names == {"corpus_a.json", "corpus_b.json", "matches_tfidf_article.tsv"}


class TestUsage:
    def test_no_subcommand(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_unknown_backend_rejected_by_argparse(self, capsys):
        assert main(["match", ALPHA, BETA, "--backend", "nope"]) == EXIT_USAGE

    def test_bad_k(self, tmp_path):
        code = main(
            ["eval", ALPHA, BETA, "--backend", "tfidf", "--gold", GOLD,
             "--k", "0", "--out", str(tmp_path)]
        )
        assert code == EXIT_USAGE

    def test_threads_env_does_not_change_output(self, tmp_path, capsys, monkeypatch):
        out1, out2 = tmp_path / "serial", tmp_path / "threaded"
        assert main(["match", ALPHA, BETA, "--out", str(out1)]) == EXIT_OK
        monkeypatch.setenv("LEXALIGN_THREADS", "4")
        assert main(["match", ALPHA, BETA, "--out", str(out2)]) == EXIT_OK
        a = (out1 / "matches_tfidf_article.tsv").read_bytes()
        b = (out2 / "matches_tfidf_article.tsv").read_bytes()
        assert a == b

    def test_bad_threads_env_is_usage_error(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LEXALIGN_THREADS", "many")
        assert main(["match", ALPHA, BETA, "--out", str(tmp_path)]) == EXIT_USAGE


class TestConsoleEntryPoint:
    def test_installed_script_runs(self, tmp_path):
        result = subprocess.run(
            [sys.executable, "-m", "lexalign.cli", "parse", ALPHA],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert json.loads(result.stdout)["law_id"] == "mini_alpha"
