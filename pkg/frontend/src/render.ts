/**
 * Scene rendering: one SVG string per frame, painter-sorted mesh faces
 * shaded by semantic label, surface outlines, and window rectangles at
 * the exact layout slots the service computed. No positions are invented
 * client-side; everything geometric comes from the scene payload.
 */

import type { ScenePayload, SurfaceInfo, WindowInfo, WorkspacePayload } from "./api.js";
import {
  DEFAULT_VIEWPORT,
  planeRectCorners,
  projectPolygon,
  toPointsAttr,
  type Camera,
  type Vec3,
  type Viewport,
} from "./projection.js";

const LABEL_FILLS: Record<string, string> = {
  wall: "#b8c4d0",
  floor: "#8f9aa5",
  ceiling: "#d7dde3",
  table: "#c9a227",
  desk: "#b5832a",
  cabinet: "#7d9a6a",
  door: "#a9746e",
  window: "#9cc3d5",
  shelf: "#a08bb0",
  screen: "#5d7b93",
  whiteboard: "#e8e8e2",
};

/** Outline/window rectangles sit slightly off the plane so they draw
 * over the mesh face they belong to. Exported so tests can recompute
 * the exact drawn geometry from the layout payload. */
export const SURFACE_LIFT = 0.01;
export const WINDOW_LIFT = 0.02;

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

interface Piece {
  depth: number;
  markup: string;
}

function facePieces(scene: ScenePayload, camera: Camera, viewport: Viewport): Piece[] {
  const pieces: Piece[] = [];
  const { vertices, faces, labels } = scene.scene;
  for (let i = 0; i < faces.length; i++) {
    const face = faces[i]!;
    const corners = face.map((vi) => vertices[vi]! as Vec3);
    const poly = projectPolygon(corners, camera, viewport);
    if (!poly) continue;
    const label = labels[i];
    const fill = label !== undefined ? LABEL_FILLS[label] : undefined;
    // unknown labels degrade to wireframe rather than miscoloring
    const style =
      fill !== undefined
        ? `fill="${fill}" stroke="#46505a" stroke-width="0.5"`
        : `fill="none" stroke="#46505a" stroke-width="1"`;
    pieces.push({
      depth: poly.meanDepth,
      markup: `<polygon class="face" points="${toPointsAttr(poly)}" ${style}/>`,
    });
  }
  return pieces;
}

function surfaceCorners(surface: SurfaceInfo, lift: number): Vec3[] {
  return planeRectCorners(
    surface.centroid,
    surface.u_axis,
    surface.v_axis,
    surface.normal,
    0,
    0,
    surface.extent_u,
    surface.extent_v,
    lift,
  );
}

function surfacePieces(
  scene: ScenePayload,
  camera: Camera,
  viewport: Viewport,
  hoverId: string | null,
): Piece[] {
  const pieces: Piece[] = [];
  for (const surface of scene.surfaces) {
    const poly = projectPolygon(surfaceCorners(surface, SURFACE_LIFT), camera, viewport);
    if (!poly) continue;
    const hovered = surface.id === hoverId;
    pieces.push({
      depth: poly.meanDepth,
      markup:
        `<polygon class="surface${hovered ? " hovered" : ""}" ` +
        `data-hover-id="${surface.id}" data-surface-id="${surface.id}" ` +
        `data-semantic="${esc(surface.semantic)}" points="${toPointsAttr(poly)}">` +
        `<title>${esc(surface.display_name)} (${esc(surface.semantic)}) ` +
        `visibility ${surface.visibility.toFixed(3)}</title></polygon>`,
    });
  }
  return pieces;
}

function windowPieces(
  scene: ScenePayload,
  workspace: WorkspacePayload,
  camera: Camera,
  viewport: Viewport,
  hoverId: string | null,
): Piece[] {
  const windowsById = new Map<string, WindowInfo>(
    workspace.windows.map((w) => [w.id, w]),
  );
  const pieces: Piece[] = [];
  for (const surface of scene.surfaces) {
    const slots = scene.layouts[surface.id] ?? [];
    for (const slot of slots) {
      const win = windowsById.get(slot.window_id);
      if (!win) continue;
      const corners = planeRectCorners(
        surface.centroid,
        surface.u_axis,
        surface.v_axis,
        surface.normal,
        slot.u_offset,
        slot.v_offset,
        slot.display_w,
        slot.display_h,
        WINDOW_LIFT,
      );
      const poly = projectPolygon(corners, camera, viewport);
      if (!poly) continue;
      const hovered = win.id === hoverId;
      const center = poly.points.reduce(
        (acc, p) => ({ x: acc.x + p.x / 4, y: acc.y + p.y / 4 }),
        { x: 0, y: 0 },
      );
      pieces.push({
        depth: poly.meanDepth,
        markup:
          `<g class="window${hovered ? " hovered" : ""}" ` +
          `data-hover-id="${win.id}" data-window-id="${win.id}" ` +
          `data-surface-id="${surface.id}">` +
          `<polygon points="${toPointsAttr(poly)}"/>` +
          `<text x="${center.x.toFixed(2)}" y="${center.y.toFixed(2)}">${esc(win.name)}</text>` +
          `</g>`,
      });
    }
  }
  return pieces;
}

/** Windows with location "none", listed in the dock below the viewport. */
export function unplacedWindows(workspace: WorkspacePayload): WindowInfo[] {
  return workspace.windows.filter((w) => w.location === "none");
}

export function renderSvg(
  scene: ScenePayload,
  workspace: WorkspacePayload,
  camera: Camera,
  hoverId: string | null = null,
  viewport: Viewport = DEFAULT_VIEWPORT,
): string {
  // far to near so closer geometry paints over farther geometry
  const faces = facePieces(scene, camera, viewport).sort((a, b) => b.depth - a.depth);
  // surfaces and windows draw over the mesh, still depth-sorted between themselves
  const overlays = [
    ...surfacePieces(scene, camera, viewport, hoverId),
    ...windowPieces(scene, workspace, camera, viewport, hoverId),
  ].sort((a, b) => b.depth - a.depth);
  const body = [...faces, ...overlays].map((p) => p.markup).join("");
  return (
    `<svg viewBox="0 0 ${viewport.width} ${viewport.height}" ` +
    `width="${viewport.width}" height="${viewport.height}" ` +
    `xmlns="http://www.w3.org/2000/svg">${body}</svg>`
  );
}
