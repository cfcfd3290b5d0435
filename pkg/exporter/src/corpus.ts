/**
 * Reader for the corpus record file format (tab-separated, one recital
 * per line, header required). The exporter only needs the ordered
 * recital list; ordering comes from the numeric indices in each row,
 * never from line order, matching the core engine's parser.
 */

import { readFileSync } from "node:fs";

import { normalizeWs } from "./split.js";

export const RECORD_HEADER = "chapter\tsection\tarticle\trecital\ttitle\ttext";

export interface RecitalRow {
  chapter: number;
  section: number;
  article: number;
  recital: number;
  /** flat alias, e.g. "a7.r2" — the unit id used in store keys */
  alias: string;
  text: string;
}

export class CorpusFormatError extends Error {
  readonly line: number | null;

  constructor(message: string, line: number | null = null) {
    super(line === null ? message : `line ${line}: ${message}`);
    this.line = line;
  }
}

function unescapeText(field: string): string {
  let out = "";
  let i = 0;
  while (i < field.length) {
    if (field[i] === "\\" && i + 1 < field.length) {
      const mapped: Record<string, string> = { "\\": "\\", t: "\t", n: "\n", r: "\r" };
      const next = mapped[field[i + 1]];
      if (next !== undefined) {
        out += next;
        i += 2;
        continue;
      }
    }
    out += field[i];
    i += 1;
  }
  return out;
}

function indexOf(raw: string, field: string, line: number, required: boolean): number {
  const trimmed = raw.trim();
  if (!trimmed) {
    if (required) throw new CorpusFormatError(`missing ${field} index`, line);
    return 0;
  }
  const value = Number(trimmed);
  if (!Number.isInteger(value)) {
    throw new CorpusFormatError(`non-numeric ${field} index ${JSON.stringify(trimmed)}`, line);
  }
  if (value < 0 || (required && value < 1)) {
    throw new CorpusFormatError(`${field} index must be positive, got ${value}`, line);
  }
  return value;
}

/** Parse a corpus record file into recitals in document order. */
export function readCorpusFile(path: string): RecitalRow[] {
  const raw = readFileSync(path, "utf-8");
  const lines = raw.split(/\r?\n/);
  if (!lines.length || lines[0] !== RECORD_HEADER) {
    throw new CorpusFormatError(`expected header ${JSON.stringify(RECORD_HEADER)}`, 1);
  }
  const rows: RecitalRow[] = [];
  const seen = new Set<string>();
  for (let n = 1; n < lines.length; n += 1) {
    const line = lines[n];
    if (!line.trim()) continue;
    const lineno = n + 1;
    const fields = line.split("\t");
    if (fields.length !== 6) {
      throw new CorpusFormatError(`expected 6 fields, got ${fields.length}`, lineno);
    }
    const chapter = indexOf(fields[0], "chapter", lineno, true);
    const section = indexOf(fields[1], "section", lineno, false);
    const article = indexOf(fields[2], "article", lineno, true);
    const recital = indexOf(fields[3], "recital", lineno, true);
    const text = normalizeWs(unescapeText(fields[5]));
    if (!text) throw new CorpusFormatError("row has empty text", lineno);
    const slot = `${chapter}.${section}.${article}.${recital}`;
    if (seen.has(slot)) {
      throw new CorpusFormatError(`recital slot c${slot} appears twice`, lineno);
    }
    seen.add(slot);
    rows.push({
      chapter,
      section,
      article,
      recital,
      alias: `a${article}.r${recital}`,
      text,
    });
  }
  if (!rows.length) throw new CorpusFormatError("no rows to parse");
  rows.sort(
    (a, b) =>
      a.chapter - b.chapter ||
      a.section - b.section ||
      a.article - b.article ||
      a.recital - b.recital,
  );
  return rows;
}
