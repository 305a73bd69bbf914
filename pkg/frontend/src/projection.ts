/**
 * Minimal pinhole projection for drawing the room as SVG. The camera is
 * exactly the session head pose: same position, same forward vector, so
 * what the user sees is what the engine scores.
 */

export type Vec3 = [number, number, number];

export function add(a: Vec3, b: Vec3): Vec3 {
  return [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
}

export function sub(a: Vec3, b: Vec3): Vec3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

export function scale(a: Vec3, s: number): Vec3 {
  return [a[0] * s, a[1] * s, a[2] * s];
}

export function dot(a: Vec3, b: Vec3): number {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

export function cross(a: Vec3, b: Vec3): Vec3 {
  return [
    a[1] * b[2] - a[2] * b[1],
    a[2] * b[0] - a[0] * b[2],
    a[0] * b[1] - a[1] * b[0],
  ];
}

export function norm(a: Vec3): number {
  return Math.sqrt(dot(a, a));
}

export function normalize(a: Vec3): Vec3 {
  const n = norm(a);
  if (n < 1e-12) throw new Error("cannot normalize zero vector");
  return scale(a, 1 / n);
}

export interface Camera {
  position: Vec3;
  forward: Vec3;
}

export interface Viewport {
  width: number;
  height: number;
  /** vertical field of view, degrees */
  fovY: number;
  /** points closer than this along forward are clipped */
  near: number;
}

export const DEFAULT_VIEWPORT: Viewport = {
  width: 960,
  height: 640,
  fovY: 70,
  near: 0.05,
};

export interface CameraBasis {
  right: Vec3;
  up: Vec3;
  forward: Vec3;
}

const WORLD_UP: Vec3 = [0, 1, 0];

/** Right-handed view basis from the forward vector and world up. */
export function cameraBasis(camera: Camera): CameraBasis {
  const forward = normalize(camera.forward);
  let right: Vec3;
  const side = cross(forward, WORLD_UP);
  if (norm(side) < 1e-9) {
    // looking straight up or down; pick a stable right
    right = [1, 0, 0];
  } else {
    right = normalize(side);
  }
  const up = cross(right, forward);
  return { right, up, forward };
}

export interface Projected {
  x: number;
  y: number;
  /** distance along the camera forward axis, for painter sorting */
  depth: number;
}

export function projectPoint(
  point: Vec3,
  camera: Camera,
  viewport: Viewport = DEFAULT_VIEWPORT,
): Projected | null {
  const basis = cameraBasis(camera);
  const rel = sub(point, camera.position);
  const depth = dot(rel, basis.forward);
  if (depth <= viewport.near) return null;
  const focal = viewport.height / 2 / Math.tan((viewport.fovY * Math.PI) / 360);
  return {
    x: viewport.width / 2 + (focal * dot(rel, basis.right)) / depth,
    y: viewport.height / 2 - (focal * dot(rel, basis.up)) / depth,
    depth,
  };
}

export interface ProjectedPolygon {
  points: Projected[];
  meanDepth: number;
}

/** Project a world-space polygon; null when any vertex is clipped. */
export function projectPolygon(
  corners: Vec3[],
  camera: Camera,
  viewport: Viewport = DEFAULT_VIEWPORT,
): ProjectedPolygon | null {
  const points: Projected[] = [];
  let total = 0;
  for (const corner of corners) {
    const p = projectPoint(corner, camera, viewport);
    if (p === null) return null;
    points.push(p);
    total += p.depth;
  }
  return { points, meanDepth: total / points.length };
}

/**
 * World-space corners of a rectangle on a surface plane. Offsets and
 * extents are in the surface's (u, v) coordinates, metres; `lift` pushes
 * the rectangle off the plane along the normal so outlines and windows
 * draw over the mesh face they sit on.
 */
export function planeRectCorners(
  centroid: Vec3,
  uAxis: Vec3,
  vAxis: Vec3,
  normal: Vec3,
  uOffset: number,
  vOffset: number,
  width: number,
  height: number,
  lift = 0,
): Vec3[] {
  const base = add(centroid, scale(normal, lift));
  const corner = (du: number, dv: number): Vec3 =>
    add(base, add(scale(uAxis, uOffset + du), scale(vAxis, vOffset + dv)));
  return [
    corner(-width / 2, -height / 2),
    corner(width / 2, -height / 2),
    corner(width / 2, height / 2),
    corner(-width / 2, height / 2),
  ];
}

export function toPointsAttr(poly: ProjectedPolygon, precision = 2): string {
  return poly.points
    .map((p) => `${p.x.toFixed(precision)},${p.y.toFixed(precision)}`)
    .join(" ");
}

/** Rotate the camera forward about the world Y axis (yaw, radians). */
export function yaw(camera: Camera, angle: number): Camera {
  const [fx, fy, fz] = camera.forward;
  const c = Math.cos(angle);
  const s = Math.sin(angle);
  return {
    position: camera.position,
    forward: normalize([fx * c + fz * s, fy, -fx * s + fz * c]),
  };
}

/** Pitch the camera up/down, clamped away from the poles. */
export function pitch(camera: Camera, angle: number): Camera {
  const basis = cameraBasis(camera);
  const c = Math.cos(angle);
  const s = Math.sin(angle);
  const f = add(scale(basis.forward, c), scale(basis.up, s));
  const unit = normalize(f);
  if (Math.abs(unit[1]) > 0.99) return camera;
  return { position: camera.position, forward: unit };
}
