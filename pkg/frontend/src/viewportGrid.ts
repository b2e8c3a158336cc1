/**
 * The 3x3 viewport grid: one canvas, one renderer, nine scenes rendered
 * through scissored viewports, each applying one candidate's vertex shader
 * to the shared model geometry.  A shared clock feeds every material's
 * `time` uniform so candidates animate in phase.
 */

import * as THREE from "three";
import { CameraRig, VIEWPORT_COUNT } from "./cameraRig.js";

export interface CellRect {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** Pixel rectangle of grid cell `index` (row-major from the top-left). */
export function cellRect(index: number, width: number, height: number): CellRect {
  const row = Math.floor(index / 3);
  const column = index % 3;
  const cellWidth = Math.floor(width / 3);
  const cellHeight = Math.floor(height / 3);
  return {
    x: column * cellWidth,
    // WebGL viewports measure from the bottom; row 0 is the top row.
    y: (2 - row) * cellHeight,
    width: cellWidth,
    height: cellHeight,
  };
}

const FRAGMENT_SHADER = `
uniform vec3 tint;
void main() {
    float shade = 1.1 - gl_FragCoord.z * 0.55;
    gl_FragColor = vec4(tint * shade, 1.0);
}
`;

export function makeCandidateMaterial(vertexShader: string): THREE.ShaderMaterial {
  return new THREE.ShaderMaterial({
    vertexShader,
    fragmentShader: FRAGMENT_SHADER,
    uniforms: {
      time: { value: 0 },
      tint: { value: new THREE.Color("#7fd4a8") },
    },
    side: THREE.DoubleSide,
  });
}

export class ViewportGrid {
  private readonly renderer: THREE.WebGLRenderer;
  private readonly scenes: THREE.Scene[] = [];
  private readonly meshes: THREE.Mesh[] = [];
  private geometry: THREE.BufferGeometry | null = null;
  private renderingIndex = -1;
  readonly errored: boolean[] = new Array(VIEWPORT_COUNT).fill(false);
  onViewportError: (index: number) => void = () => {};

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly rig: CameraRig,
  ) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setScissorTest(true);
    this.renderer.debug.onShaderError = () => {
      if (this.renderingIndex >= 0 && !this.errored[this.renderingIndex]) {
        this.errored[this.renderingIndex] = true;
        this.onViewportError(this.renderingIndex);
      }
    };
    for (let i = 0; i < VIEWPORT_COUNT; i++) {
      const scene = new THREE.Scene();
      scene.background = new THREE.Color("#10151c");
      const mesh = new THREE.Mesh(undefined, makeCandidateMaterial("void main(){gl_Position = projectionMatrix * modelViewMatrix * vec4(position, 1.0);}"));
      scene.add(mesh);
      this.scenes.push(scene);
      this.meshes.push(mesh);
    }
  }

  setGeometry(geometry: THREE.BufferGeometry): void {
    this.geometry?.dispose();
    this.geometry = geometry;
    for (const mesh of this.meshes) {
      mesh.geometry = geometry;
    }
  }

  /** Swap in one shader per viewport; fewer than nine leaves the rest empty. */
  setCandidates(shaders: string[]): void {
    for (let i = 0; i < VIEWPORT_COUNT; i++) {
      const shader = shaders[i];
      const mesh = this.meshes[i]!;
      (mesh.material as THREE.ShaderMaterial).dispose();
      mesh.material = makeCandidateMaterial(
        shader ?? "void main(){gl_Position = projectionMatrix * modelViewMatrix * vec4(position, 1.0);}",
      );
      mesh.visible = shader !== undefined;
      this.errored[i] = false;
    }
  }

  resize(width: number, height: number): void {
    this.renderer.setSize(width, height, false);
    const cell = cellRect(0, width, height);
    this.rig.setAspect(cell.width / Math.max(cell.height, 1));
  }

  render(elapsedSeconds: number): void {
    const width = this.canvas.width;
    const height = this.canvas.height;
    for (let i = 0; i < VIEWPORT_COUNT; i++) {
      const rect = cellRect(i, width, height);
      this.renderer.setViewport(rect.x, rect.y, rect.width, rect.height);
      this.renderer.setScissor(rect.x, rect.y, rect.width, rect.height);
      const material = this.meshes[i]!.material as THREE.ShaderMaterial;
      material.uniforms.time!.value = elapsedSeconds;
      this.renderingIndex = i;
      this.renderer.render(this.scenes[i]!, this.rig.cameras[i]!);
    }
    this.renderingIndex = -1;
  }
}
