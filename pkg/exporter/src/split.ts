/**
 * Deterministic rule-based sentence splitter.
 *
 * Mirrors the core engine's rule exactly: a terminator (. ; ? !)
 * followed by whitespace ends a sentence unless the word carrying it is
 * a guarded abbreviation; text without terminators is one sentence;
 * empty strings are never produced. Conformance against the shared
 * fixture is checked before every export.
 */

const TERMINATORS = new Set([".", ";", "?", "!"]);
const ABBREVIATIONS = new Set(["art.", "no.", "e.g.", "i.e.", "par."]);

const WHITESPACE = /\s/;
const ALNUM = /[\p{L}\p{N}]/u;

function isGuarded(text: string, start: number, i: number): boolean {
  let j = i;
  while (j > start && !WHITESPACE.test(text[j - 1])) {
    j -= 1;
  }
  let token = text.slice(j, i + 1).toLowerCase();
  let k = 0;
  while (k < token.length && !ALNUM.test(token[k])) {
    k += 1;
  }
  return ABBREVIATIONS.has(token.slice(k));
}

export function splitSentences(text: string): string[] {
  const pieces: string[] = [];
  let start = 0;
  for (let i = 0; i < text.length; i += 1) {
    if (!TERMINATORS.has(text[i])) continue;
    if (i + 1 >= text.length || !WHITESPACE.test(text[i + 1])) continue;
    if (isGuarded(text, start, i)) continue;
    const piece = text.slice(start, i + 1).trim();
    if (piece) pieces.push(piece);
    start = i + 1;
  }
  const tail = text.slice(start).trim();
  if (tail) pieces.push(tail);
  return pieces;
}

export function normalizeWs(text: string): string {
  return text.split(/\s+/u).filter(Boolean).join(" ");
}
