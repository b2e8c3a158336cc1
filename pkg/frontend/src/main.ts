/** Application wiring: DOM, input events, and the interactive loop. */

import { ApiError, EvoshapeApi } from "./api.js";
import type { ModelJson } from "./api.js";
import { CameraRig, VIEWPORT_COUNT } from "./cameraRig.js";
import { boundingRadius, defaultFigure, geometryFromModel, validateModelJson } from "./meshes.js";
import { UiSessionState } from "./state.js";
import { parseTransformationFile } from "./transformationFile.js";
import { ViewportGrid } from "./viewportGrid.js";

const api = new EvoshapeApi(
  new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8000",
);

const canvas = document.getElementById("grid-canvas") as HTMLCanvasElement;
const overlay = document.getElementById("grid-overlay")!;
const statusLine = document.getElementById("status")!;
const generationLabel = document.getElementById("generation")!;
const startButton = document.getElementById("start") as HTMLButtonElement;
const nextButton = document.getElementById("next") as HTMLButtonElement;
const saveButton = document.getElementById("save") as HTMLButtonElement;
const seedInput = document.getElementById("seed") as HTMLInputElement;
const nameInput = document.getElementById("save-name") as HTMLInputElement;
const modelUpload = document.getElementById("model-upload") as HTMLInputElement;
const fileLoad = document.getElementById("transformation-file") as HTMLInputElement;
const transformationList = document.getElementById("transformation-list")!;
const modelList = document.getElementById("model-list")!;

const rig = new CameraRig();
const grid = new ViewportGrid(canvas, rig);
let state: UiSessionState | null = null;
let currentModel: ModelJson = defaultFigure();
let busy = false;

// -- grid overlay -------------------------------------------------------

interface Cell {
  root: HTMLElement;
  button: HTMLButtonElement;
  badge: HTMLElement;
  label: HTMLElement;
}

const cells: Cell[] = [];
for (let i = 0; i < VIEWPORT_COUNT; i++) {
  const root = document.createElement("div");
  root.className = "cell";
  const label = document.createElement("div");
  label.className = "cell-label";
  const badge = document.createElement("div");
  badge.className = "cell-badge";
  badge.textContent = "shader error";
  badge.hidden = true;
  const button = document.createElement("button");
  button.className = "cell-select";
  button.textContent = "Select";
  button.disabled = true;
  button.addEventListener("click", () => toggleCell(i));
  root.append(label, badge, button);
  overlay.append(root);
  cells.push({ root, button, badge, label });
}

grid.onViewportError = (index) => {
  cells[index]!.badge.hidden = false;
};

function toggleCell(index: number): void {
  if (!state) return;
  const candidate = state.candidates[index];
  if (!candidate) return;
  state.toggle(candidate.candidate_id);
  refreshCells();
}

function refreshCells(): void {
  for (let i = 0; i < VIEWPORT_COUNT; i++) {
    const cell = cells[i]!;
    const candidate = state?.candidates[i];
    cell.button.disabled = busy || !candidate;
    const selected = candidate !== undefined && state!.isSelected(candidate.candidate_id);
    cell.root.classList.toggle("selected", selected);
    cell.button.textContent = selected ? "Selected" : "Select";
    cell.label.textContent = candidate?.expression ?? "";
  }
  nextButton.disabled = busy || !state?.canStep;
  saveButton.disabled = busy || !state?.canStep;
  generationLabel.textContent = state ? `generation ${state.generation}` : "no session";
}

function setStatus(message: string, isError = false): void {
  statusLine.textContent = message;
  statusLine.classList.toggle("error", isError);
}

function adoptResponse(response: Parameters<UiSessionState["apply"]>[0]): void {
  state!.apply(response);
  grid.setCandidates(state!.candidates.map((c) => c.shader));
  for (const cell of cells) cell.badge.hidden = true;
  refreshCells();
}

// -- session actions ----------------------------------------------------

async function guarded(action: () => Promise<void>): Promise<void> {
  if (busy) return;
  busy = true;
  refreshCells();
  try {
    await action();
  } catch (error) {
    if (error instanceof ApiError) {
      setStatus(`${error.code}: ${error.message}`, true);
    } else {
      setStatus(`request failed (${(error as Error).message}); retry when ready`, true);
    }
  } finally {
    busy = false;
    refreshCells();
  }
}

startButton.addEventListener("click", () => guarded(async () => {
  const seedText = seedInput.value.trim();
  const seed = seedText === "" ? undefined : Number(seedText);
  const created = await api.createSession(seed);
  state = new UiSessionState(created.session_id);
  adoptResponse(created);
  setStatus(`session ${created.session_id.slice(0, 8)} started`);
}));

nextButton.addEventListener("click", () => guarded(async () => {
  if (!state) return;
  try {
    adoptResponse(await api.step(state.sessionId, state.selectedIds()));
    setStatus(`bred generation ${state.generation}`);
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      adoptResponse(await api.candidates(state.sessionId));
      setStatus("display was out of date and has been refreshed; reselect", true);
      return;
    }
    throw error;
  }
}));

saveButton.addEventListener("click", () => guarded(async () => {
  if (!state) return;
  const firstSelected = state.selectedIds()[0];
  if (!firstSelected) return;
  const name = nameInput.value.trim() || "untitled";
  const saved = await api.save(state.sessionId, firstSelected, name);
  setStatus(`saved "${name}" (${saved.transformation_id.slice(0, 8)})`);
  await refreshBrowsePanels();
}));

// -- browse panels ------------------------------------------------------

async function refreshBrowsePanels(): Promise<void> {
  const transformations = await api.listTransformations();
  transformationList.replaceChildren(
    ...transformations.items.map((record) => {
      const row = document.createElement("li");
      const title = document.createElement("span");
      title.textContent = `${record.name}: ${record.expression}`;
      const load = document.createElement("button");
      load.textContent = "Load";
      load.addEventListener("click", () => guarded(async () => {
        if (!state) {
          setStatus("start a session first", true);
          return;
        }
        adoptResponse(await api.inject(state.sessionId, record.id));
        setStatus(`injected "${record.name}" into the population`);
      }));
      const exportLink = document.createElement("a");
      exportLink.textContent = "export";
      exportLink.href = URL.createObjectURL(
        new Blob([JSON.stringify(record, null, 2)], { type: "application/json" }),
      );
      exportLink.download = `${record.name}.transformation.json`;
      row.append(title, load, exportLink);
      return row;
    }),
  );

  const models = await api.listModels();
  modelList.replaceChildren(
    ...models.items.map((model) => {
      const row = document.createElement("li");
      const title = document.createElement("span");
      title.textContent = `${model.name} (${model.vertex_count} vertices)`;
      const load = document.createElement("button");
      load.textContent = "Load";
      load.addEventListener("click", () => guarded(async () => {
        const full = await api.getModel(model.id);
        applyModel(full.payload, model.id);
        setStatus(`loaded model "${model.name}"`);
      }));
      row.append(title, load);
      return row;
    }),
  );
}

function applyModel(model: ModelJson, modelId: string | null): void {
  currentModel = model;
  if (state) state.modelId = modelId;
  grid.setGeometry(geometryFromModel(model));
  rig.frame(boundingRadius(model));
}

modelUpload.addEventListener("change", () => guarded(async () => {
  const file = modelUpload.files?.[0];
  if (!file) return;
  const text = await file.text();
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (error) {
    setStatus(`model file is not JSON: ${(error as Error).message}`, true);
    return;
  }
  const violations = validateModelJson(doc);
  if (violations.length > 0) {
    setStatus(`model rejected: ${violations.join("; ")}`, true);
    return;
  }
  const uploaded = await api.uploadModel(doc as ModelJson);
  applyModel(doc as ModelJson, uploaded.model_id);
  setStatus(`uploaded model "${(doc as ModelJson).name}"`);
  await refreshBrowsePanels();
}));

fileLoad.addEventListener("change", () => guarded(async () => {
  const file = fileLoad.files?.[0];
  if (!file || !state) {
    if (!state) setStatus("start a session first", true);
    return;
  }
  try {
    const record = parseTransformationFile(await file.text());
    adoptResponse(await api.inject(state.sessionId, record.id));
    setStatus(`injected "${record.name}" from file`);
  } catch (error) {
    if (error instanceof ApiError) throw error;
    setStatus(`transformation file rejected: ${(error as Error).message}`, true);
  }
}));

// -- camera input -------------------------------------------------------

let dragging = false;
let dragButton = 0;
let moved = 0;
let lastX = 0;
let lastY = 0;

canvas.addEventListener("pointerdown", (event) => {
  dragging = true;
  dragButton = event.button;
  moved = 0;
  lastX = event.clientX;
  lastY = event.clientY;
  canvas.setPointerCapture(event.pointerId);
});

canvas.addEventListener("pointermove", (event) => {
  if (!dragging) return;
  const dx = event.clientX - lastX;
  const dy = event.clientY - lastY;
  moved += Math.abs(dx) + Math.abs(dy);
  lastX = event.clientX;
  lastY = event.clientY;
  if (dragButton === 2 || event.shiftKey) {
    rig.pan(dx / canvas.clientWidth, dy / canvas.clientHeight);
  } else {
    rig.orbit(-dx * 0.008, -dy * 0.008);
  }
});

canvas.addEventListener("pointerup", (event) => {
  dragging = false;
  if (moved < 4) {
    // A click, not a drag: toggle the viewport under the pointer.
    const bounds = canvas.getBoundingClientRect();
    const column = Math.floor(((event.clientX - bounds.left) / bounds.width) * 3);
    const row = Math.floor(((event.clientY - bounds.top) / bounds.height) * 3);
    toggleCell(row * 3 + column);
  }
});

canvas.addEventListener("contextmenu", (event) => event.preventDefault());

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  rig.zoom(event.deltaY > 0 ? 1.1 : 1 / 1.1);
}, { passive: false });

window.addEventListener("keydown", (event) => {
  const step = 0.08;
  switch (event.key) {
    case "ArrowLeft": rig.orbit(step, 0); break;
    case "ArrowRight": rig.orbit(-step, 0); break;
    case "ArrowUp": rig.orbit(0, -step); break;
    case "ArrowDown": rig.orbit(0, step); break;
    case "+": case "=": rig.zoom(1 / 1.1); break;
    case "-": rig.zoom(1.1); break;
    case "w": rig.pan(0, 0.05); break;
    case "s": rig.pan(0, -0.05); break;
    case "a": rig.pan(0.05, 0); break;
    case "d": rig.pan(-0.05, 0); break;
    case "Enter":
      if (!nextButton.disabled) nextButton.click();
      break;
    default: return;
  }
});

// -- boot ---------------------------------------------------------------

function resize(): void {
  const bounds = canvas.parentElement!.getBoundingClientRect();
  canvas.width = Math.max(1, Math.floor(bounds.width));
  canvas.height = Math.max(1, Math.floor(bounds.height));
  grid.resize(canvas.width, canvas.height);
}

window.addEventListener("resize", resize);
resize();
applyModel(currentModel, null);

const startedAt = performance.now();
function frame(): void {
  grid.render((performance.now() - startedAt) / 1000);
  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);

refreshCells();
refreshBrowsePanels().catch(() => {
  setStatus("server unreachable; start it with scripts/run_server.py", true);
});
