export { annotate, annotateSentence } from "./annotate.js";
export type { AnnotateOptions } from "./annotate.js";
export { lemmaCandidates, whitelistedLemma } from "./lemmatize.js";
export { tokenize, chunk, headNounPhrase } from "./chunker.js";
export {
  recordSchema,
  frameSchema,
  argumentSchema,
  isAcceptedLabel,
  labelProblem,
} from "./schema.js";
export type { SentenceRecord, PasFrame, PasArgument } from "./schema.js";
export { validateLines, formatReport } from "./validate.js";
export type { ValidationReport, LineError } from "./validate.js";
