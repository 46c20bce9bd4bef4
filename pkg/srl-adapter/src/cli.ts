#!/usr/bin/env node
/**
 * srl-adapter annotate --in text.txt --whitelist verbs.txt --out pas.jsonl
 * srl-adapter validate pas.jsonl
 */

import * as fs from "node:fs";
import * as readline from "node:readline";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { annotate } from "./annotate.js";
import { formatReport, validateLines } from "./validate.js";

export function loadWhitelist(path: string): Set<string> {
  const out = new Set<string>();
  for (const raw of fs.readFileSync(path, "utf-8").split("\n")) {
    const line = raw.split("#", 1)[0].trim();
    if (line) out.add(line.toLowerCase());
  }
  return out;
}

async function runAnnotate(args: {
  in: string;
  whitelist: string;
  out: string;
  batchSize: number;
}): Promise<number> {
  const whitelist = loadWhitelist(args.whitelist);
  if (whitelist.size === 0) {
    process.stderr.write("srl-adapter: whitelist is empty\n");
    return 1;
  }
  const input = readline.createInterface({
    input: fs.createReadStream(args.in, "utf-8"),
    crlfDelay: Infinity,
  });
  const sentences: string[] = [];
  for await (const line of input) sentences.push(line);

  const out = fs.createWriteStream(args.out, { encoding: "utf-8" });
  let written = 0;
  let skipped = 0;
  for (const record of annotate(sentences, {
    whitelist,
    batchSize: args.batchSize,
    onError: (sentence, error) => {
      skipped += 1;
      process.stderr.write(
        `srl-adapter: skipping unparseable sentence: ${JSON.stringify(sentence)} (${error})\n`,
      );
    },
  })) {
    out.write(JSON.stringify(record) + "\n");
    written += 1;
  }
  await new Promise<void>((resolve, reject) => {
    out.end((err?: Error | null) => (err ? reject(err) : resolve()));
  });
  process.stderr.write(`srl-adapter: wrote ${written} records (${skipped} skipped)\n`);
  return 0;
}

function runValidate(path: string): number {
  const text = fs.readFileSync(path, "utf-8");
  const lines = text.length ? text.replace(/\n$/, "").split("\n") : [];
  const report = validateLines(lines);
  process.stdout.write(formatReport(report) + "\n");
  return report.errors.length === 0 ? 0 : 1;
}

export async function main(argv: string[]): Promise<number> {
  let exitCode = 0;
  await yargs(argv)
    .scriptName("srl-adapter")
    .command(
      "annotate",
      "annotate raw sentences (one per line) into PAS JSONL",
      (y) =>
        y
          .option("in", { type: "string", demandOption: true, describe: "input text file" })
          .option("whitelist", { type: "string", demandOption: true, describe: "verb lemma whitelist" })
          .option("out", { type: "string", demandOption: true, describe: "output JSONL path" })
          .option("batch-size", { type: "number", default: 64 }),
      async (a) => {
        exitCode = await runAnnotate({
          in: a.in,
          whitelist: a.whitelist,
          out: a.out,
          batchSize: a["batch-size"],
        });
      },
    )
    .command(
      "validate <file>",
      "report schema conformance of a PAS JSONL file",
      (y) => y.positional("file", { type: "string", demandOption: true }),
      (a) => {
        exitCode = runValidate(a.file as string);
      },
    )
    .demandCommand(1)
    .strict()
    .help()
    .parseAsync();
  return exitCode;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;

if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
