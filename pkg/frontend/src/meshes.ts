/**
 * Model JSON handling: client-side validation (mirrors the server's rules),
 * conversion to three.js geometry, and the bundled default figure.
 */

import * as THREE from "three";
import type { ModelJson } from "./api.js";

/** Violations for a candidate mesh document; empty means acceptable. */
export function validateModelJson(doc: unknown): string[] {
  const violations: string[] = [];
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    return ["payload must be a JSON object"];
  }
  const record = doc as Record<string, unknown>;
  if (typeof record.name !== "string") {
    violations.push('"name" must be a string');
  }
  const positions = record.positions;
  let vertexCount = 0;
  if (!Array.isArray(positions)) {
    violations.push('"positions" must be an array');
  } else {
    if (positions.length % 3 !== 0) {
      violations.push(`"positions" length ${positions.length} is not divisible by 3`);
    }
    if (!positions.every((v) => typeof v === "number" && Number.isFinite(v))) {
      violations.push('"positions" must hold finite numbers');
    }
    vertexCount = Math.floor(positions.length / 3);
  }
  const indices = record.indices;
  if (!Array.isArray(indices)) {
    violations.push('"indices" must be an array');
  } else {
    if (indices.length % 3 !== 0) {
      violations.push(`"indices" length ${indices.length} is not divisible by 3`);
    }
    if (!indices.every((v) => typeof v === "number" && Number.isInteger(v) && v >= 0)) {
      violations.push('"indices" must hold non-negative integers');
    } else if (!indices.every((v) => v < vertexCount)) {
      violations.push(`"indices" must stay below the vertex count ${vertexCount}`);
    }
  }
  return violations;
}

export function geometryFromModel(model: ModelJson): THREE.BufferGeometry {
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute(
    "position",
    new THREE.BufferAttribute(new Float32Array(model.positions), 3),
  );
  geometry.setIndex(model.indices);
  geometry.computeBoundingSphere();
  return geometry;
}

export function boundingRadius(model: ModelJson): number {
  let max = 0;
  for (let i = 0; i < model.positions.length; i += 3) {
    const x = model.positions[i]!;
    const y = model.positions[i + 1]!;
    const z = model.positions[i + 2]!;
    max = Math.max(max, Math.hypot(x, y, z));
  }
  return max || 1;
}

function appendBox(
  model: ModelJson,
  width: number,
  height: number,
  depth: number,
  cx: number,
  cy: number,
  cz: number,
  segments = 5,
): void {
  const box = new THREE.BoxGeometry(width, height, depth, segments, segments, segments);
  const positions = box.getAttribute("position");
  const index = box.getIndex()!;
  const offset = model.positions.length / 3;
  for (let i = 0; i < positions.count; i++) {
    model.positions.push(
      positions.getX(i) + cx,
      positions.getY(i) + cy,
      positions.getZ(i) + cz,
    );
  }
  for (let i = 0; i < index.count; i++) {
    model.indices.push(index.getX(i) + offset);
  }
  box.dispose();
}

/**
 * The bundled default model: a blocky standing figure, densely segmented so
 * displacement expressions have vertices to push around.
 */
export function defaultFigure(): ModelJson {
  const model: ModelJson = { name: "figure", positions: [], indices: [] };
  appendBox(model, 0.8, 0.8, 0.8, 0, 2.6, 0); // head
  appendBox(model, 1.4, 1.8, 0.7, 0, 1.2, 0); // torso
  appendBox(model, 0.45, 1.6, 0.45, -1.0, 1.2, 0); // left arm
  appendBox(model, 0.45, 1.6, 0.45, 1.0, 1.2, 0); // right arm
  appendBox(model, 0.5, 1.9, 0.5, -0.4, -0.8, 0); // left leg
  appendBox(model, 0.5, 1.9, 0.5, 0.4, -0.8, 0); // right leg
  return model;
}
