/**
 * One shared camera pose driving nine viewport cameras.
 *
 * Every input event mutates a single orbit pose (spherical angles, radius,
 * target), and `apply()` writes that pose to all nine cameras, so the
 * cameras are identical by construction after every event.
 */

import * as THREE from "three";

export const VIEWPORT_COUNT = 9;

const MIN_PHI = 0.05;
const MAX_PHI = Math.PI - 0.05;
const MIN_RADIUS = 0.1;
const MAX_RADIUS = 1e4;

export class CameraRig {
  readonly cameras: THREE.PerspectiveCamera[];
  theta = Math.PI / 4;
  phi = Math.PI / 3;
  radius = 6;
  readonly target = new THREE.Vector3(0, 0, 0);

  constructor(aspect = 1, fov = 45) {
    this.cameras = Array.from(
      { length: VIEWPORT_COUNT },
      () => new THREE.PerspectiveCamera(fov, aspect, 0.01, 1e5),
    );
    this.apply();
  }

  orbit(deltaTheta: number, deltaPhi: number): void {
    this.theta += deltaTheta;
    this.phi = THREE.MathUtils.clamp(this.phi + deltaPhi, MIN_PHI, MAX_PHI);
    this.apply();
  }

  /** factor > 1 moves the cameras away from the target, < 1 toward it. */
  zoom(factor: number): void {
    this.radius = THREE.MathUtils.clamp(this.radius * factor, MIN_RADIUS, MAX_RADIUS);
    this.apply();
  }

  /** Shift the target (and with it every camera) in the view plane. */
  pan(deltaX: number, deltaY: number): void {
    const offset = this.cameraPosition().sub(this.target);
    const right = new THREE.Vector3().crossVectors(offset, new THREE.Vector3(0, 1, 0))
      .normalize().multiplyScalar(-deltaX * this.radius);
    const up = new THREE.Vector3(0, 1, 0).multiplyScalar(deltaY * this.radius);
    this.target.add(right).add(up);
    this.apply();
  }

  /** Re-aim at the origin from a distance that fits a bounding radius. */
  frame(boundingRadius: number): void {
    this.target.set(0, 0, 0);
    this.radius = THREE.MathUtils.clamp(boundingRadius * 2.5, MIN_RADIUS, MAX_RADIUS);
    this.apply();
  }

  setAspect(aspect: number): void {
    for (const camera of this.cameras) {
      camera.aspect = aspect;
      camera.updateProjectionMatrix();
    }
  }

  private cameraPosition(): THREE.Vector3 {
    const sinPhi = Math.sin(this.phi);
    return new THREE.Vector3(
      this.target.x + this.radius * sinPhi * Math.sin(this.theta),
      this.target.y + this.radius * Math.cos(this.phi),
      this.target.z + this.radius * sinPhi * Math.cos(this.theta),
    );
  }

  apply(): void {
    const position = this.cameraPosition();
    for (const camera of this.cameras) {
      camera.position.copy(position);
      camera.up.set(0, 1, 0);
      camera.lookAt(this.target);
      camera.updateMatrixWorld(true);
    }
  }

  /** True when all nine world matrices are element-wise identical. */
  posesEqual(): boolean {
    const first = this.cameras[0]!.matrixWorld.elements;
    return this.cameras.every((camera) =>
      camera.matrixWorld.elements.every((value, i) => value === first[i]),
    );
  }
}
