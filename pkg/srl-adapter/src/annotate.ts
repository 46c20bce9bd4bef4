/**
 * Heuristic predicate-argument annotation of raw sentences.
 *
 * For each whitelisted verb: the nearest noun phrase to its left is the
 * agent (skipping over prepositional modifiers, so the label lands on
 * the head noun phrase), the first bare noun phrase to its right is the
 * theme, to/from/with phrases become ARG2, locative phrases ARGM-LOC,
 * -ly adverbs ARGM-MNR, and temporal words ARGM-TMP. Argument tokens
 * are lowercased; predicates are lemmatized. One sentence can carry
 * several frames; conjoined verbs inherit the previous subject.
 */

import {
  ARG2_PREPOSITIONS,
  Chunk,
  LOCATIVE_PREPOSITIONS,
  Token,
  chunk,
  headNounPhrase,
  tokenize,
} from "./chunker.js";
import { whitelistedLemma } from "./lemmatize.js";
import type { PasFrame, SentenceRecord } from "./schema.js";

export interface AnnotateOptions {
  whitelist: ReadonlySet<string>;
  /** Records per internal batch; purely a throughput knob. */
  batchSize?: number;
  /** Called for sentences the engine fails on (they are skipped). */
  onError?: (sentence: string, error: unknown) => void;
}

function findPredicates(
  tokens: Token[],
  whitelist: ReadonlySet<string>,
): Map<number, string> {
  const verbs = new Map<number, string>();
  for (let i = 0; i < tokens.length; i++) {
    const tok = tokens[i];
    if (tok.kind !== "word" && tok.kind !== "adv") continue;
    // a nominal use ("the chase") is not a predicate
    if (i > 0 && tokens[i - 1].kind === "det") continue;
    const lemma = whitelistedLemma(tok.lower, whitelist);
    if (lemma !== null) verbs.set(tok.index, lemma);
  }
  return verbs;
}

function lowerTokens(tokens: Token[]): string[] {
  return tokens.map((t) => t.lower);
}

function subjectFor(
  chunks: Chunk[],
  verbAt: number,
  previousSubject: string[] | null,
): string[] | null {
  // conjoined verb phrase: "drinks tea and reads ..." shares the subject
  const before = chunks[verbAt - 1];
  if (before && before.type === "CONJ" && previousSubject) {
    return previousSubject;
  }
  for (let k = verbAt - 1; k >= 0; k--) {
    const c = chunks[k];
    if (c.type === "NP") return lowerTokens(c.tokens);
    if (c.type === "PP" || c.type === "ADV" || c.type === "TMP") continue;
    break; // verb, conjunction, punctuation: no subject on this side
  }
  return null;
}

function frameFor(
  chunks: Chunk[],
  verbAt: number,
  lemma: string,
  verbToken: Token,
  previousSubject: string[] | null,
): PasFrame | null {
  const args: { label: string; head_tokens: string[] }[] = [];
  const subject = subjectFor(chunks, verbAt, previousSubject);
  if (subject) args.push({ label: "ARG0", head_tokens: subject });

  let sawObject = false;
  let sawArg2 = false;
  let sawLoc = false;
  let sawMnr = false;
  let sawTmp = false;
  for (let k = verbAt + 1; k < chunks.length; k++) {
    const c = chunks[k];
    if (c.type === "VERB" || c.type === "CONJ" || c.type === "PUNCT") break;
    if (c.type === "NP" && !sawObject) {
      args.push({ label: "ARG1", head_tokens: lowerTokens(headNounPhrase(chunks, k)) });
      sawObject = true;
    } else if (c.type === "PP") {
      const prep = c.prep.lower;
      if (ARG2_PREPOSITIONS.has(prep) && !sawArg2) {
        args.push({ label: "ARG2", head_tokens: lowerTokens(c.np) });
        sawArg2 = true;
      } else if (LOCATIVE_PREPOSITIONS.has(prep) && !sawLoc) {
        args.push({ label: "ARGM-LOC", head_tokens: lowerTokens(c.np) });
        sawLoc = true;
      }
    } else if (c.type === "ADV" && !sawMnr) {
      args.push({ label: "ARGM-MNR", head_tokens: [c.token.lower] });
      sawMnr = true;
    } else if (c.type === "TMP" && !sawTmp) {
      args.push({ label: "ARGM-TMP", head_tokens: [c.token.lower] });
      sawTmp = true;
    }
  }
  if (args.length === 0) return null;
  return { predicate_lemma: lemma, predicate_index: verbToken.index, args };
}

/** Annotate one raw sentence into a record (null for blank input). */
export function annotateSentence(
  sentence: string,
  whitelist: ReadonlySet<string>,
): SentenceRecord | null {
  const trimmed = sentence.trim();
  if (!trimmed) return null;
  const tokens = tokenize(trimmed);
  const verbs = findPredicates(tokens, whitelist);
  const chunks = chunk(tokens, verbs);
  const frames: PasFrame[] = [];
  let previousSubject: string[] | null = null;
  chunks.forEach((c, k) => {
    if (c.type !== "VERB") return;
    const frame = frameFor(chunks, k, c.lemma, c.token, previousSubject);
    if (frame) {
      frames.push(frame);
      const subj = frame.args.find((a) => a.label === "ARG0");
      if (subj) previousSubject = subj.head_tokens;
    }
  });
  return { tokens: tokens.map((t) => t.text), frames };
}

/**
 * Annotate a stream of sentences, preserving input order. Sentences the
 * engine throws on are reported through `onError` and skipped; blank
 * lines yield no record.
 */
export function* annotate(
  sentences: Iterable<string>,
  options: AnnotateOptions,
): Generator<SentenceRecord> {
  const batchSize = options.batchSize ?? 64;
  let batch: string[] = [];
  const flush = function* (buf: string[]) {
    for (const sentence of buf) {
      let record: SentenceRecord | null = null;
      try {
        record = annotateSentence(sentence, options.whitelist);
      } catch (error) {
        options.onError?.(sentence, error);
        continue;
      }
      if (record) yield record;
    }
  };
  for (const sentence of sentences) {
    batch.push(sentence);
    if (batch.length >= batchSize) {
      yield* flush(batch);
      batch = [];
    }
  }
  yield* flush(batch);
}
