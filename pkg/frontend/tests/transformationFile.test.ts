import { describe, expect, it } from "vitest";

import { parseTransformationFile } from "../src/transformationFile.js";

const RECORD = {
  id: "abc123",
  name: "wave",
  expression: "(sin y)",
  created_at: "2026-01-01T00:00:00+00:00",
  source_model_id: null,
};

describe("parseTransformationFile", () => {
  it("parses a full export", () => {
    const record = parseTransformationFile(JSON.stringify(RECORD));
    expect(record).toEqual(RECORD);
  });

  it("tolerates a missing created_at", () => {
    const { created_at, ...partial } = RECORD;
    const record = parseTransformationFile(JSON.stringify(partial));
    expect(record.created_at).toBe("");
    expect(record.id).toBe("abc123");
  });

  it.each(["id", "name", "expression"])("requires %s", (field) => {
    const broken: Record<string, unknown> = { ...RECORD };
    delete broken[field];
    expect(() => parseTransformationFile(JSON.stringify(broken)))
      .toThrow(new RegExp(field));
  });

  it("rejects invalid JSON with a reason", () => {
    expect(() => parseTransformationFile("{oops")).toThrow(/not valid JSON/);
  });

  it("rejects arrays and scalars", () => {
    expect(() => parseTransformationFile("[1]")).toThrow(/JSON object/);
    expect(() => parseTransformationFile("42")).toThrow(/JSON object/);
  });
});
