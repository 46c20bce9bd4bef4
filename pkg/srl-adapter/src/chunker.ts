/**
 * Shallow, lexicon-driven tokenization and chunking.
 *
 * Good enough to find subjects, objects, and modifier phrases in plain
 * declarative sentences; anything it cannot analyse simply yields fewer
 * frames. The parser is a stand-in for an external model and is not a
 * contract of the output format.
 */

const DETERMINERS = new Set([
  "the", "a", "an", "this", "that", "these", "those",
  "his", "her", "its", "their", "my", "your", "our", "some",
]);

const PREPOSITIONS = new Set([
  "with", "in", "at", "on", "from", "to", "of", "under", "over",
  "near", "by", "into", "inside", "behind", "beside",
]);

export const LOCATIVE_PREPOSITIONS = new Set([
  "in", "at", "on", "under", "over", "near", "into", "inside",
  "behind", "beside",
]);

/** Prepositions introducing a third core argument (recipient, source, means). */
export const ARG2_PREPOSITIONS = new Set(["to", "from", "with"]);

const CONJUNCTIONS = new Set(["and", "or", "but"]);

const TEMPORAL_WORDS = new Set([
  "yesterday", "today", "tomorrow", "tonight", "now",
]);

const PLAIN_ADVERBS = new Set([
  "often", "never", "always", "here", "there", "again", "twice",
]);

export type TokenKind =
  | "det"
  | "prep"
  | "conj"
  | "adv"
  | "tmp"
  | "punct"
  | "word";

export interface Token {
  text: string;
  lower: string;
  index: number;
  kind: TokenKind;
}

export function tokenize(sentence: string): Token[] {
  const raw = sentence
    .replace(/([.,!?;:])/g, " $1 ")
    .split(/\s+/)
    .filter((t) => t.length > 0);
  return raw.map((text, index) => {
    const lower = text.toLowerCase();
    let kind: TokenKind = "word";
    if (/^[.,!?;:]$/.test(lower)) kind = "punct";
    else if (DETERMINERS.has(lower)) kind = "det";
    else if (PREPOSITIONS.has(lower)) kind = "prep";
    else if (CONJUNCTIONS.has(lower)) kind = "conj";
    else if (TEMPORAL_WORDS.has(lower)) kind = "tmp";
    else if (lower.endsWith("ly") || PLAIN_ADVERBS.has(lower)) kind = "adv";
    return { text, lower, index, kind };
  });
}

export type Chunk =
  | { type: "NP"; tokens: Token[] }
  | { type: "PP"; prep: Token; np: Token[] }
  | { type: "VERB"; token: Token; lemma: string }
  | { type: "ADV"; token: Token }
  | { type: "TMP"; token: Token }
  | { type: "CONJ"; token: Token }
  | { type: "PUNCT"; token: Token };

/**
 * Group tokens into flat chunks. `verbIndices` marks tokens already
 * identified as predicates (with their lemmas).
 */
export function chunk(
  tokens: Token[],
  verbs: ReadonlyMap<number, string>,
): Chunk[] {
  const chunks: Chunk[] = [];
  let i = 0;
  while (i < tokens.length) {
    const tok = tokens[i];
    const lemma = verbs.get(tok.index);
    if (lemma !== undefined) {
      chunks.push({ type: "VERB", token: tok, lemma });
      i += 1;
      continue;
    }
    if (tok.kind === "prep") {
      const np: Token[] = [];
      let j = i + 1;
      if (j < tokens.length && tokens[j].kind === "det") {
        np.push(tokens[j]);
        j += 1;
      }
      while (
        j < tokens.length &&
        (tokens[j].kind === "word" || tokens[j].kind === "tmp") &&
        !verbs.has(tokens[j].index)
      ) {
        np.push(tokens[j]);
        j += 1;
      }
      if (np.length > 0) {
        chunks.push({ type: "PP", prep: tok, np });
        i = j;
        continue;
      }
      // stranded preposition: treat as punctuation-like filler
      chunks.push({ type: "PUNCT", token: tok });
      i += 1;
      continue;
    }
    if (tok.kind === "det" || tok.kind === "word") {
      const np: Token[] = [tok];
      let j = i + 1;
      while (
        j < tokens.length &&
        (tokens[j].kind === "word" ||
          (tokens[j].kind === "det" && np[np.length - 1].kind === "det")) &&
        !verbs.has(tokens[j].index)
      ) {
        np.push(tokens[j]);
        j += 1;
      }
      chunks.push({ type: "NP", tokens: np });
      i = j;
      continue;
    }
    if (tok.kind === "adv") chunks.push({ type: "ADV", token: tok });
    else if (tok.kind === "tmp") chunks.push({ type: "TMP", token: tok });
    else if (tok.kind === "conj") chunks.push({ type: "CONJ", token: tok });
    else chunks.push({ type: "PUNCT", token: tok });
    i += 1;
  }
  return chunks;
}

/**
 * The head noun phrase of an argument starting at chunk `k`: the base NP
 * alone, with any trailing PP modifiers stripped (the label moves to the
 * smaller subtree).
 */
export function headNounPhrase(chunks: Chunk[], k: number): Token[] {
  const c = chunks[k];
  if (c.type === "NP") return c.tokens;
  if (c.type === "PP") return c.np;
  if (c.type === "ADV" || c.type === "TMP") return [c.token];
  return [];
}
