/**
 * Writer for the embedding-store interchange format consumed by the
 * core engine: a `#dim=<d> backend=<name>` header, then one
 * `<unit_id>#<sentence_index>\tv1 v2 ... vd` line per sentence.
 *
 * The file is written atomically (temp file + rename) so a failed
 * export never leaves a partial store behind.
 */

import { mkdirSync, renameSync, rmSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

export interface StoreEntry {
  key: string;
  vector: number[];
}

export function renderStore(entries: StoreEntry[], dim: number, backend: string): string {
  const lines = [`#dim=${dim} backend=${backend}`];
  for (const { key, vector } of entries) {
    if (vector.length !== dim) {
      throw new Error(`vector for ${key} has ${vector.length} values, expected ${dim}`);
    }
    for (const value of vector) {
      if (!Number.isFinite(value)) {
        throw new Error(`non-finite value in vector for ${key}`);
      }
    }
    lines.push(`${key}\t${vector.map((v) => v.toString()).join(" ")}`);
  }
  return lines.join("\n") + "\n";
}

export function writeStoreAtomic(
  entries: StoreEntry[],
  dim: number,
  backend: string,
  outputPath: string,
): void {
  const body = renderStore(entries, dim, backend);
  mkdirSync(dirname(outputPath), { recursive: true });
  const temp = `${outputPath}.tmp`;
  try {
    writeFileSync(temp, body, "utf-8");
    renameSync(temp, outputPath);
  } catch (err) {
    rmSync(temp, { force: true });
    throw err;
  }
}
