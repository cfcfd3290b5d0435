/**
 * Shared sentence-splitting conformance cases.
 *
 * The same cases are checked into the repository at
 * data/conformance/sentence_splits.json and exercised by the core
 * engine's test suite; every component that re-implements the splitter
 * must reproduce them exactly. Exports refuse to run when the local
 * splitter disagrees with the fixture.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { splitSentences } from "./split.js";

export interface ConformanceCase {
  text: string;
  sentences: string[];
}

export const CASES: ConformanceCase[] = [
  { text: "One. Two.", sentences: ["One.", "Two."] },
  { text: "See art. 5 of this Law.", sentences: ["See art. 5 of this Law."] },
  { text: "No terminator here", sentences: ["No terminator here"] },
  {
    text: "First clause; second clause? Indeed!",
    sentences: ["First clause;", "second clause?", "Indeed!"],
  },
  {
    text: "Processing is lawful, e.g. when consent is given.",
    sentences: ["Processing is lawful, e.g. when consent is given."],
  },
  {
    text: "Pursuant to par. 2 of this article, i.e. the general rule, data may be shared.",
    sentences: [
      "Pursuant to par. 2 of this article, i.e. the general rule, data may be shared.",
    ],
  },
  {
    text: "The controller shall comply. The processor shall assist the controller.",
    sentences: ["The controller shall comply.", "The processor shall assist the controller."],
  },
  {
    text: "Art. 5(1) applies here. No. 2 does too.",
    sentences: ["Art. 5(1) applies here.", "No. 2 does too."],
  },
  {
    text: "Is this lawful? It is! It is; truly.",
    sentences: ["Is this lawful?", "It is!", "It is;", "truly."],
  },
  {
    text: "Terms (e.g. consent) are defined. Details follow.",
    sentences: ["Terms (e.g. consent) are defined.", "Details follow."],
  },
  {
    text: "A casino. Not an abbreviation.",
    sentences: ["A casino.", "Not an abbreviation."],
  },
  { text: "Data protection matters.", sentences: ["Data protection matters."] },
];

export function loadFixture(path: string): ConformanceCase[] {
  const doc = JSON.parse(readFileSync(path, "utf-8"));
  if (!Array.isArray(doc.cases)) {
    throw new Error(`${path}: fixture has no "cases" array`);
  }
  for (const item of doc.cases) {
    if (typeof item.text !== "string" || !Array.isArray(item.sentences) || !item.text) {
      throw new Error(`${path}: malformed fixture case`);
    }
  }
  return doc.cases as ConformanceCase[];
}

/** Emit the fixture file shared with the core engine's test suite. */
export function emitFixture(outputPath: string): void {
  const doc = {
    description:
      "Shared sentence-splitting conformance cases. Every component that " +
      "re-implements the splitter must reproduce these splits exactly.",
    cases: CASES,
  };
  writeFileSync(outputPath, JSON.stringify(doc, null, 2) + "\n", "utf-8");
}

/** Return a human-readable mismatch list; empty means conformant. */
export function checkConformance(cases: ConformanceCase[]): string[] {
  const failures: string[] = [];
  for (const { text, sentences } of cases) {
    const got = splitSentences(text);
    if (got.length !== sentences.length || got.some((s, i) => s !== sentences[i])) {
      failures.push(
        `split(${JSON.stringify(text)}) = ${JSON.stringify(got)}, expected ${JSON.stringify(sentences)}`,
      );
    }
  }
  return failures;
}
