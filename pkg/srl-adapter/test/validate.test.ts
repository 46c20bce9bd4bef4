import { describe, expect, it } from "vitest";

import { formatReport, validateLines } from "../src/validate.js";

const GOOD = JSON.stringify({
  tokens: ["John", "drinks", "red", "wine", "slowly"],
  frames: [
    {
      predicate_lemma: "drink",
      predicate_index: 1,
      args: [
        { label: "ARG0", head_tokens: ["john"] },
        { label: "ARG1", head_tokens: ["red", "wine"] },
        { label: "ARGM-MNR", head_tokens: ["slowly"] },
      ],
    },
  ],
});

describe("validateLines", () => {
  it("accepts a conforming file", () => {
    const report = validateLines([GOOD, GOOD]);
    expect(report.errors).toEqual([]);
    expect(report.records).toBe(2);
    expect(report.labelHistogram).toEqual({
      ARG0: 2,
      ARG1: 2,
      "ARGM-MNR": 2,
    });
  });

  it("flags a record without frames field", () => {
    const report = validateLines([GOOD, JSON.stringify({ tokens: ["a"] })]);
    expect(report.errors).toHaveLength(1);
    expect(report.errors[0].line).toBe(2);
  });

  it("flags reference labels", () => {
    const bad = JSON.stringify({
      tokens: ["x"],
      frames: [
        {
          predicate_lemma: "chase",
          args: [{ label: "R-ARG0", head_tokens: ["that"] }],
        },
      ],
    });
    const report = validateLines([bad]);
    expect(report.errors).toHaveLength(1);
    expect(report.errors[0].message).toContain("R-ARG0");
  });

  it("flags unknown adjunct functions and bad lemmas", () => {
    const badLabel = JSON.stringify({
      tokens: [],
      frames: [
        { predicate_lemma: "see", args: [{ label: "ARGM-XYZ", head_tokens: ["x"] }] },
      ],
    });
    const badLemma = JSON.stringify({
      tokens: [],
      frames: [
        { predicate_lemma: "two words", args: [{ label: "ARG0", head_tokens: ["x"] }] },
      ],
    });
    const report = validateLines([badLabel, badLemma]);
    expect(report.errors.map((e) => e.line)).toEqual([1, 2]);
  });

  it("flags empty head_tokens and invalid JSON", () => {
    const empty = JSON.stringify({
      tokens: [],
      frames: [{ predicate_lemma: "see", args: [{ label: "ARG0", head_tokens: [] }] }],
    });
    const report = validateLines([empty, "{broken"]);
    expect(report.errors.length).toBe(2);
  });

  it("skips blank lines without counting records", () => {
    const report = validateLines(["", GOOD, "  "]);
    expect(report.lines).toBe(3);
    expect(report.records).toBe(1);
    expect(report.errors).toEqual([]);
  });

  it("renders a readable report", () => {
    const text = formatReport(validateLines([GOOD]));
    expect(text).toContain("records   1");
    expect(text).toContain("ARGM-MNR");
  });
});
