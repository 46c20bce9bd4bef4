/**
 * Schema conformance reporting for PAS JSONL files.
 *
 * Validation never throws on bad content: every problem becomes a
 * line-numbered entry in the report, alongside a histogram of the
 * argument labels seen in valid records.
 */

import { recordSchema } from "./schema.js";

export interface LineError {
  line: number;
  message: string;
}

export interface ValidationReport {
  lines: number;
  records: number;
  errors: LineError[];
  labelHistogram: Record<string, number>;
}

export function validateLines(lines: Iterable<string>): ValidationReport {
  const report: ValidationReport = {
    lines: 0,
    records: 0,
    errors: [],
    labelHistogram: {},
  };
  let lineNo = 0;
  for (const raw of lines) {
    lineNo += 1;
    report.lines = lineNo;
    const text = raw.trim();
    if (!text) continue;
    let parsed: unknown;
    try {
      parsed = JSON.parse(text);
    } catch (e) {
      report.errors.push({ line: lineNo, message: `invalid JSON: ${(e as Error).message}` });
      continue;
    }
    const result = recordSchema.safeParse(parsed);
    if (!result.success) {
      for (const issue of result.error.issues) {
        const where = issue.path.length ? ` at ${issue.path.join(".")}` : "";
        report.errors.push({ line: lineNo, message: `${issue.message}${where}` });
      }
      continue;
    }
    report.records += 1;
    for (const frame of result.data.frames) {
      for (const arg of frame.args) {
        report.labelHistogram[arg.label] =
          (report.labelHistogram[arg.label] ?? 0) + 1;
      }
    }
  }
  return report;
}

export function formatReport(report: ValidationReport): string {
  const lines = [
    `lines     ${report.lines}`,
    `records   ${report.records}`,
    `errors    ${report.errors.length}`,
  ];
  for (const err of report.errors.slice(0, 50)) {
    lines.push(`  line ${err.line}: ${err.message}`);
  }
  if (report.errors.length > 50) {
    lines.push(`  ... ${report.errors.length - 50} more`);
  }
  const labels = Object.keys(report.labelHistogram).sort();
  if (labels.length > 0) {
    lines.push("labels");
    for (const label of labels) {
      lines.push(`  ${label.padEnd(10)} ${report.labelHistogram[label]}`);
    }
  }
  return lines.join("\n");
}
