/**
 * Deterministic verb lemmatization against a whitelist.
 *
 * Candidate lemmas are generated from an irregular-form table and plain
 * inflection rules; the first candidate found in the whitelist wins, so
 * every surface form maps to exactly one lemma per run.
 */

const IRREGULAR: Record<string, string> = {
  ate: "eat", eaten: "eat",
  drank: "drink", drunk: "drink",
  saw: "see", seen: "see",
  caught: "catch",
  sold: "sell",
  bought: "buy",
  found: "find",
  held: "hold",
  threw: "throw", thrown: "throw",
  gave: "give", given: "give",
  took: "take", taken: "take",
  wrote: "write", written: "write",
  ran: "run",
  went: "go", gone: "go",
  had: "have", has: "have",
  was: "be", were: "be", is: "be", are: "be", am: "be", been: "be",
  did: "do", does: "do", done: "do",
  made: "make",
  said: "say",
  got: "get",
  left: "leave",
  kept: "keep",
  told: "tell",
  came: "come",
  knew: "know", known: "know",
  broke: "break", broken: "break",
  wore: "wear", worn: "wear",
};

/** All plausible lemmas for a surface form, most specific first. */
export function lemmaCandidates(surface: string): string[] {
  const w = surface.toLowerCase();
  const out: string[] = [];
  const push = (s: string) => {
    if (s.length >= 2 && !out.includes(s)) out.push(s);
  };
  if (IRREGULAR[w]) push(IRREGULAR[w]);
  push(w);
  if (w.endsWith("ies")) push(w.slice(0, -3) + "y");
  if (w.endsWith("es")) push(w.slice(0, -2));
  if (w.endsWith("s") && !w.endsWith("ss")) push(w.slice(0, -1));
  if (w.endsWith("ied")) push(w.slice(0, -3) + "y");
  if (w.endsWith("ed")) {
    push(w.slice(0, -1)); // chased -> chase
    push(w.slice(0, -2)); // opened -> open
    if (w.length > 4 && w[w.length - 3] === w[w.length - 4]) {
      push(w.slice(0, -3)); // stopped -> stop
    }
  }
  if (w.endsWith("ing")) {
    push(w.slice(0, -3)); // reading -> read
    push(w.slice(0, -3) + "e"); // chasing -> chase
    if (w.length > 5 && w[w.length - 4] === w[w.length - 5]) {
      push(w.slice(0, -4)); // running -> run
    }
  }
  return out;
}

/**
 * The whitelisted lemma of a surface form, or null when no candidate is
 * in the whitelist.
 */
export function whitelistedLemma(
  surface: string,
  whitelist: ReadonlySet<string>,
): string | null {
  for (const cand of lemmaCandidates(surface)) {
    if (whitelist.has(cand)) return cand;
  }
  return null;
}
