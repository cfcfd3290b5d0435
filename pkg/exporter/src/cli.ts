#!/usr/bin/env node
/**
 * lexalign-export: batch-produce embedding-store files from a corpus
 * record file with a pretrained sentence encoder.
 *
 *   lexalign-export export --corpus data/gdpr.tsv --encoder siamese \
 *       [--model <name-or-path>] [--pooling mean|first-token] \
 *       [--batch-size N] [--fixture <sentence_splits.json>] --out gdpr.store
 *
 *   lexalign-export fixture --out sentence_splits.json
 *
 * Exit codes: 0 ok, 1 export/model failure (no partial file), 64 usage.
 */

import { parseArgs } from "node:util";

import { CASES, emitFixture, loadFixture } from "./conformance.js";
import { DEFAULT_MODELS, EncoderKind, Pooling, createTransformerEncoder } from "./encoder.js";
import { ExportJob, runExport } from "./export.js";

function usageError(message: string): never {
  process.stderr.write(`lexalign-export: ${message}\n`);
  process.exit(64);
}

async function cmdExport(argv: string[]): Promise<void> {
  const { values } = parseArgs({
    args: argv,
    options: {
      corpus: { type: "string" },
      level: { type: "string", default: "recital" },
      encoder: { type: "string" },
      model: { type: "string" },
      pooling: { type: "string", default: "mean" },
      "batch-size": { type: "string", default: "16" },
      fixture: { type: "string" },
      out: { type: "string" },
    },
  });
  if (!values.corpus) usageError("--corpus is required");
  if (!values.out) usageError("--out is required");
  if (values.encoder !== "contextual" && values.encoder !== "siamese") {
    usageError("--encoder must be 'contextual' or 'siamese'");
  }
  if (values.level !== "recital") usageError("--level must be 'recital'");
  if (values.pooling !== "mean" && values.pooling !== "first-token") {
    usageError("--pooling must be 'mean' or 'first-token'");
  }
  const batchSize = Number(values["batch-size"]);
  if (!Number.isInteger(batchSize) || batchSize < 1) {
    usageError("--batch-size must be a positive integer");
  }

  const kind = values.encoder as EncoderKind;
  const job: ExportJob = {
    corpusPath: values.corpus,
    level: "recital",
    encoder: kind,
    modelName: values.model ?? DEFAULT_MODELS[kind],
    pooling: values.pooling as Pooling,
    batchSize,
    outputPath: values.out,
  };
  const fixtureCases = values.fixture ? loadFixture(values.fixture) : CASES;

  const encoder = await createTransformerEncoder(kind, job.modelName, job.pooling);
  const stats = await runExport(job, encoder, fixtureCases);
  process.stdout.write(
    `wrote ${job.outputPath}: ${stats.sentences} sentences over ` +
      `${stats.recitals} recitals, dim ${stats.dim}, backend ${kind}\n`,
  );
}

function cmdFixture(argv: string[]): void {
  const { values } = parseArgs({
    args: argv,
    options: { out: { type: "string" } },
  });
  if (!values.out) usageError("--out is required");
  emitFixture(values.out);
  process.stdout.write(`wrote ${values.out}: ${CASES.length} conformance cases\n`);
}

async function main(): Promise<void> {
  const [command, ...rest] = process.argv.slice(2);
  if (command === "export") {
    await cmdExport(rest);
  } else if (command === "fixture") {
    cmdFixture(rest);
  } else {
    usageError("expected a subcommand: export | fixture");
  }
}

main().catch((err) => {
  process.stderr.write(`lexalign-export: ${err instanceof Error ? err.message : String(err)}\n`);
  process.exit(1);
});
