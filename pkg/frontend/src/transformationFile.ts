/**
 * Local transformation files: the JSON export of a saved record.  Loading
 * one client-side means validating the shape and injecting by its id (the
 * server resolves the id against the shared database).
 */

import type { TransformationRecord } from "./api.js";

export function parseTransformationFile(text: string): TransformationRecord {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (error) {
    throw new Error(`not valid JSON: ${(error as Error).message}`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new Error("transformation file must be a JSON object");
  }
  const record = doc as Record<string, unknown>;
  for (const field of ["id", "name", "expression"]) {
    if (typeof record[field] !== "string" || record[field] === "") {
      throw new Error(`transformation file needs a non-empty "${field}" field`);
    }
  }
  return {
    id: record.id as string,
    name: record.name as string,
    expression: record.expression as string,
    created_at: typeof record.created_at === "string" ? record.created_at : "",
    source_model_id:
      typeof record.source_model_id === "string" ? record.source_model_id : null,
  };
}
