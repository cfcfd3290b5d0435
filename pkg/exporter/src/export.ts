/**
 * Batch export: corpus record file -> embedding-store file.
 *
 * One store line per (recital, sentence) under the key
 * `<recital_alias>#<index>`, assembled in corpus order regardless of
 * batch scheduling. The splitter is conformance-checked against the
 * shared fixture before any encoding happens, and the store is written
 * atomically only on full success.
 */

import { ConformanceCase, checkConformance } from "./conformance.js";
import { readCorpusFile } from "./corpus.js";
import { SentenceEncoder } from "./encoder.js";
import { splitSentences } from "./split.js";
import { StoreEntry, writeStoreAtomic } from "./store.js";

export interface ExportJob {
  corpusPath: string;
  /** only recital-level export exists; article vectors are derived in the core */
  level: "recital";
  encoder: "contextual" | "siamese";
  modelName: string;
  pooling: "mean" | "first-token";
  batchSize: number;
  outputPath: string;
}

export interface ExportStats {
  recitals: number;
  sentences: number;
  dim: number;
}

export class ConformanceError extends Error {}
export class ExportError extends Error {}

export function validateJob(job: ExportJob): void {
  if (job.level !== "recital") {
    throw new ExportError(`unsupported level ${JSON.stringify(job.level)}; only recital-level export exists`);
  }
  if (!Number.isInteger(job.batchSize) || job.batchSize < 1) {
    throw new ExportError(`batch size must be >= 1, got ${job.batchSize}`);
  }
}

/** Enumerate (key, sentence) pairs for a corpus, in document order. */
export function enumerateSentences(corpusPath: string): Array<{ key: string; sentence: string }> {
  const pairs: Array<{ key: string; sentence: string }> = [];
  for (const recital of readCorpusFile(corpusPath)) {
    splitSentences(recital.text).forEach((sentence, index) => {
      pairs.push({ key: `${recital.alias}#${index}`, sentence });
    });
  }
  return pairs;
}

export async function runExport(
  job: ExportJob,
  encoder: SentenceEncoder,
  fixtureCases: ConformanceCase[],
): Promise<ExportStats> {
  validateJob(job);
  const failures = checkConformance(fixtureCases);
  if (failures.length) {
    throw new ConformanceError(
      `splitter disagrees with the shared fixture; refusing to export:\n  ${failures.join("\n  ")}`,
    );
  }

  const recitals = readCorpusFile(job.corpusPath);
  const pairs = enumerateSentences(job.corpusPath);

  const vectors: number[][] = [];
  for (let start = 0; start < pairs.length; start += job.batchSize) {
    const batch = pairs.slice(start, start + job.batchSize);
    const encoded = await encoder.encode(batch.map((p) => p.sentence));
    if (encoded.length !== batch.length) {
      throw new ExportError(
        `encoder returned ${encoded.length} vectors for a batch of ${batch.length}`,
      );
    }
    vectors.push(...encoded);
  }

  if (!vectors.length) throw new ExportError("corpus produced no sentences");
  const dim = vectors[0].length;
  const entries: StoreEntry[] = pairs.map((pair, i) => {
    if (vectors[i].length !== dim) {
      throw new ExportError(
        `inconsistent dimension: ${pair.key} has ${vectors[i].length}, expected ${dim}`,
      );
    }
    return { key: pair.key, vector: vectors[i] };
  });

  writeStoreAtomic(entries, dim, encoder.backendName, job.outputPath);
  return { recitals: recitals.length, sentences: entries.length, dim };
}
