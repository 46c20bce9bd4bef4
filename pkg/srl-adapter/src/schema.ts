/**
 * The PAS JSONL record schema consumed by the downstream model builder.
 * Everything the annotator emits must validate against this.
 */
import { z } from "zod";

export const ADJUNCT_FUNCTIONS = [
  "LOC", "TMP", "MNR", "ADV", "DIS", "DIR", "CAU", "EXT", "PRP",
  "PRD", "GOL", "COM", "NEG", "MOD", "LVB", "REC", "ADJ",
] as const;

export const CORE_LABELS = ["ARG0", "ARG1", "ARG2", "ARG3", "ARG4", "ARG5"] as const;

const adjunctSet = new Set<string>(ADJUNCT_FUNCTIONS.map((f) => `ARGM-${f}`));
const coreSet = new Set<string>(CORE_LABELS);

export function isAcceptedLabel(label: string): boolean {
  return coreSet.has(label) || adjunctSet.has(label);
}

/** Reference and continuation labels are rejected rather than malformed. */
export function labelProblem(label: string): string | null {
  if (isAcceptedLabel(label)) return null;
  if (/^[RC]-ARG/.test(label)) {
    return `reference/continuation label not accepted: ${label}`;
  }
  if (/^ARGM-/.test(label)) {
    return `adjunct function not in the accepted set: ${label}`;
  }
  return `malformed argument label: ${label}`;
}

export const argumentSchema = z.object({
  label: z.string().superRefine((label, ctx) => {
    const problem = labelProblem(label);
    if (problem) ctx.addIssue({ code: "custom", message: problem });
  }),
  head_tokens: z.array(z.string().min(1)).min(1),
});

export const frameSchema = z.object({
  predicate_lemma: z
    .string()
    .min(1)
    .refine((s) => !/[\s|]/.test(s), {
      message: "predicate lemma must not contain whitespace or '|'",
    }),
  predicate_index: z.number().int().nonnegative().optional(),
  args: z.array(argumentSchema),
});

export const recordSchema = z.object({
  tokens: z.array(z.string()),
  frames: z.array(frameSchema),
});

export type PasArgument = z.infer<typeof argumentSchema>;
export type PasFrame = z.infer<typeof frameSchema>;
export type SentenceRecord = z.infer<typeof recordSchema>;
