// @vitest-environment happy-dom

import { describe, expect, it } from "vitest";

import type { ScenePayload, SurfaceInfo, WorkspacePayload } from "../src/api.js";
import {
  planeRectCorners,
  projectPolygon,
  toPointsAttr,
  type Camera,
} from "../src/projection.js";
import { renderSvg, unplacedWindows, SURFACE_LIFT, WINDOW_LIFT } from "../src/render.js";

const CAMERA: Camera = { position: [0, 1.6, 0], forward: [0, 0, -1] };

function wallSurface(): SurfaceInfo {
  return {
    id: "s-wall",
    size: "4000x3000",
    visibility: 0.85,
    semantic: "wall",
    current_windows: ["w-maps"],
    display_name: "wall",
    area_m2: 12,
    extent_u: 4,
    extent_v: 3,
    centroid: [0, 1.5, -3],
    normal: [0, 0, 1],
    u_axis: [1, 0, 0],
    v_axis: [0, 1, 0],
    face_indices: [0, 1],
  };
}

function scenePayload(overrides: Partial<ScenePayload> = {}): ScenePayload {
  return {
    session_id: "s1",
    scene: {
      scene_id: "demo",
      vertices: [
        [-2, 0, -3],
        [2, 0, -3],
        [2, 3, -3],
        [-2, 3, -3],
      ],
      faces: [
        [0, 1, 2],
        [0, 2, 3],
      ],
      labels: ["wall", "wall"],
    },
    surfaces: [wallSurface()],
    layouts: {
      "s-wall": [
        { window_id: "w-maps", u_offset: 0.5, v_offset: -0.2, display_w: 1.2, display_h: 0.9 },
      ],
    },
    head: { position: [0, 1.6, 0], forward: [0, 0, -1], timestamp: 0 },
    generation: 1,
    ...overrides,
  };
}

function workspacePayload(): WorkspacePayload {
  return {
    windows: [
      { id: "w-maps", size: "200x200", location: "s-wall", name: "Google Maps" },
      { id: "w-chat", size: "400x300", location: "none", name: "Chat" },
    ],
    placements: { "s-wall": ["w-maps"] },
    generation: 1,
  };
}

function mount(svg: string): HTMLElement {
  const host = document.createElement("div");
  host.innerHTML = svg;
  return host;
}

describe("renderSvg", () => {
  it("shades mesh faces by their semantic label", () => {
    const host = mount(renderSvg(scenePayload(), workspacePayload(), CAMERA));
    const faces = host.querySelectorAll("polygon.face");
    expect(faces.length).toBe(2);
    for (const face of faces) {
      expect(face.getAttribute("fill")).toBe("#b8c4d0");
    }
  });

  it("falls back to wireframe for unknown or missing labels", () => {
    const scene = scenePayload();
    scene.scene.labels = ["plant", "wall"];
    const host = mount(renderSvg(scene, workspacePayload(), CAMERA));
    const fills = [...host.querySelectorAll("polygon.face")].map((f) =>
      f.getAttribute("fill"),
    );
    expect(fills).toContain("none");
    expect(fills).toContain("#b8c4d0");

    scene.scene.labels = [];
    const bare = mount(renderSvg(scene, workspacePayload(), CAMERA));
    for (const face of bare.querySelectorAll("polygon.face")) {
      expect(face.getAttribute("fill")).toBe("none");
    }
  });

  it("outlines surfaces with their ids and semantics", () => {
    const host = mount(renderSvg(scenePayload(), workspacePayload(), CAMERA));
    const outline = host.querySelector('polygon.surface[data-surface-id="s-wall"]');
    expect(outline).not.toBeNull();
    expect(outline!.getAttribute("data-semantic")).toBe("wall");
    expect(outline!.getAttribute("data-hover-id")).toBe("s-wall");
    expect(outline!.querySelector("title")?.textContent).toContain("wall");

    const expected = toPointsAttr(
      projectPolygon(
        planeRectCorners([0, 1.5, -3], [1, 0, 0], [0, 1, 0], [0, 0, 1], 0, 0, 4, 3, SURFACE_LIFT),
        CAMERA,
      )!,
    );
    expect(outline!.getAttribute("points")).toBe(expected);
  });

  it("marks the hovered element", () => {
    const host = mount(renderSvg(scenePayload(), workspacePayload(), CAMERA, "s-wall"));
    const outline = host.querySelector('[data-surface-id="s-wall"]');
    expect(outline!.getAttribute("class")).toContain("hovered");
    const windowGroup = host.querySelector('g[data-window-id="w-maps"]');
    expect(windowGroup!.getAttribute("class")).not.toContain("hovered");
  });

  it("draws window rectangles exactly at the layout slots the engine sent", () => {
    const scene = scenePayload();
    const host = mount(renderSvg(scene, workspacePayload(), CAMERA));
    const group = host.querySelector('g[data-window-id="w-maps"]');
    expect(group).not.toBeNull();
    expect(group!.getAttribute("data-surface-id")).toBe("s-wall");
    expect(group!.querySelector("text")?.textContent).toBe("Google Maps");

    const slot = scene.layouts["s-wall"]![0]!;
    const expected = toPointsAttr(
      projectPolygon(
        planeRectCorners(
          [0, 1.5, -3],
          [1, 0, 0],
          [0, 1, 0],
          [0, 0, 1],
          slot.u_offset,
          slot.v_offset,
          slot.display_w,
          slot.display_h,
          WINDOW_LIFT,
        ),
        CAMERA,
      )!,
    );
    expect(group!.querySelector("polygon")!.getAttribute("points")).toBe(expected);
  });

  it("skips layout slots whose window is missing from the workspace", () => {
    const scene = scenePayload();
    scene.layouts["s-wall"]!.push({
      window_id: "w-ghost",
      u_offset: -1,
      v_offset: 0,
      display_w: 0.5,
      display_h: 0.5,
    });
    const host = mount(renderSvg(scene, workspacePayload(), CAMERA));
    expect(host.querySelector('[data-window-id="w-ghost"]')).toBeNull();
    expect(host.querySelector('[data-window-id="w-maps"]')).not.toBeNull();
  });

  it("culls geometry behind the camera", () => {
    const behind: Camera = { position: [0, 1.6, 0], forward: [0, 0, 1] };
    const host = mount(renderSvg(scenePayload(), workspacePayload(), behind));
    expect(host.querySelectorAll("polygon").length).toBe(0);
  });

  it("paints nearer faces after farther ones", () => {
    const scene = scenePayload();
    scene.scene.vertices.push([-0.5, 1, -1], [0.5, 1, -1], [0, 2, -1]);
    scene.scene.faces.push([4, 5, 6]);
    scene.scene.labels = ["wall", "wall", "table"];
    const host = mount(renderSvg(scene, workspacePayload(), CAMERA));
    const fills = [...host.querySelectorAll("polygon.face")].map((f) =>
      f.getAttribute("fill"),
    );
    // the near table face (depth 1) must come after both wall faces (depth 3)
    expect(fills[fills.length - 1]).toBe("#c9a227");
  });
});

describe("unplacedWindows", () => {
  it("lists only windows without a location", () => {
    const unplaced = unplacedWindows(workspacePayload());
    expect(unplaced.map((w) => w.id)).toEqual(["w-chat"]);
  });
});
