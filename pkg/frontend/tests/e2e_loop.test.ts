// @vitest-environment happy-dom

/**
 * Full loop against the real HTTP service: boot the app on a live demo
 * session, dwell on a window and a surface, say "put that there", and
 * watch the window rectangle land on that surface through the app's own
 * event subscription. No engine internals are touched; everything goes
 * over the wire.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { get as httpGet } from "node:http";
import { resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { bootApp, type AppHandle } from "../src/main.js";
import { planeRectCorners, projectPolygon, toPointsAttr } from "../src/projection.js";
import { WINDOW_LIFT } from "../src/render.js";

// vitest runs from frontend/, the service package lives one level up
const REPO_ROOT = resolve(process.cwd(), "..");
const PORT = 8700 + Math.floor(Math.random() * 200);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let serverExited: Promise<void>;
let serverLog = "";
let handle: AppHandle;
let root: HTMLElement;

function sleep(ms: number): Promise<void> {
  return new Promise((r) => setTimeout(r, ms));
}

// plain node http here: happy-dom's fetch logs every refused connection
function healthOk(): Promise<boolean> {
  return new Promise((done) => {
    const req = httpGet(`${BASE}/healthz`, (resp) => {
      resp.resume();
      done(resp.statusCode === 200);
    });
    req.on("error", () => done(false));
  });
}

async function waitForHealth(deadlineMs: number): Promise<void> {
  const deadline = Date.now() + deadlineMs;
  while (Date.now() < deadline) {
    if (await healthOk()) return;
    await sleep(100);
  }
  throw new Error(`service never came up\n${serverLog}`);
}

async function waitFor<T>(
  probe: () => T | null,
  deadlineMs: number,
  what: string,
): Promise<T> {
  const deadline = Date.now() + deadlineMs;
  while (Date.now() < deadline) {
    const got = probe();
    if (got !== null) return got;
    await sleep(50);
  }
  throw new Error(`timed out waiting for ${what}`);
}

function hoverTarget(selector: string): Element {
  const el = root.querySelector(selector);
  if (!el) throw new Error(`no element matches ${selector}`);
  return el;
}

/** Dwell on an element for `ms`, re-querying around re-renders. */
async function dwell(selector: string, ms: number): Promise<void> {
  hoverTarget(selector).dispatchEvent(
    new MouseEvent("mouseover", { bubbles: true }),
  );
  await sleep(ms);
  // hovering re-renders, so the original node may have been replaced
  hoverTarget(selector).dispatchEvent(
    new MouseEvent("mouseout", { bubbles: true }),
  );
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "xrwm", "serve", "--port", String(PORT)], {
    cwd: REPO_ROOT,
    stdio: ["ignore", "pipe", "pipe"],
  });
  server.stdout?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  server.stderr?.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  serverExited = new Promise((resolve) => server.once("exit", () => resolve()));
  await waitForHealth(20000);

  document.body.innerHTML = `<div id="app"></div>`;
  root = document.getElementById("app") as HTMLElement;
  handle = await bootApp(root, BASE);
}, 30000);

afterAll(async () => {
  handle?.stop();
  await sleep(100);
  // SIGKILL: uvicorn would otherwise drain the parked long-poll handler
  server?.kill("SIGKILL");
  await serverExited;
});

describe("put-that-there over the live service", () => {
  it("moves the hovered window onto the hovered surface within one event cycle", async () => {
    const scene = handle.store.state.scene!;
    const cabinet = scene.surfaces.find((s) => s.semantic === "cabinet");
    expect(cabinet).toBeDefined();
    const cabinetId = cabinet!.id;

    // every window starts in the dock, and the cabinet outline is on screen
    expect(root.querySelector(`li[data-window-id="w-maps"]`)).not.toBeNull();
    expect(
      root.querySelector(`polygon[data-hover-id="${cabinetId}"]`),
    ).not.toBeNull();
    expect(
      root.querySelector(`#viewport [data-window-id="w-maps"]`),
    ).toBeNull();

    await dwell(`li[data-window-id="w-maps"]`, 1500);
    await dwell(`polygon[data-hover-id="${cabinetId}"]`, 1200);
    await handle.queue.idle();

    const input = root.querySelector("#console-text") as HTMLInputElement;
    input.value = "put that there";
    root
      .querySelector("#console")!
      .dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));

    // the app's own long-poll must deliver the move; the test never refreshes
    const placed = await waitFor(
      () => root.querySelector(`#viewport g[data-window-id="w-maps"]`),
      10000,
      "w-maps rectangle to appear on a surface",
    );
    expect(placed.getAttribute("data-surface-id")).toBe(cabinetId);
    expect(root.querySelector(`li[data-window-id="w-maps"]`)).toBeNull();

    const entry = await waitFor(
      () => root.querySelector("#history .entry"),
      5000,
      "console history entry",
    );
    expect(entry.getAttribute("class")).toContain("applied");
    expect(entry.textContent).toContain("put that there");
  }, 30000);

  it("draws the moved rectangle exactly where the engine's layout says", async () => {
    const sessionId = handle.store.state.sessionId;
    const payload = await handle.client.scene(sessionId);
    const cabinet = payload.surfaces.find((s) => s.semantic === "cabinet")!;
    const slot = (payload.layouts[cabinet.id] ?? []).find(
      (s) => s.window_id === "w-maps",
    );
    expect(slot).toBeDefined();

    const expected = toPointsAttr(
      projectPolygon(
        planeRectCorners(
          cabinet.centroid,
          cabinet.u_axis,
          cabinet.v_axis,
          cabinet.normal,
          slot!.u_offset,
          slot!.v_offset,
          slot!.display_w,
          slot!.display_h,
          WINDOW_LIFT,
        ),
        handle.store.state.camera,
      )!,
    );
    const drawn = root
      .querySelector(`#viewport g[data-window-id="w-maps"] polygon`)!
      .getAttribute("points");
    expect(drawn).toBe(expected);
  });

  it("re-fetching renders the identical scene", async () => {
    const before = (root.querySelector("#viewport") as HTMLElement).innerHTML;
    expect(before).toContain("<svg");
    await handle.refresh();
    const after = (root.querySelector("#viewport") as HTMLElement).innerHTML;
    expect(after).toBe(before);
  });

  it("surfaces engine-reported failures in the console history", async () => {
    const input = root.querySelector("#console-text") as HTMLInputElement;
    input.value = "arrange the lathis";
    root
      .querySelector("#console")!
      .dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));

    const entries = await waitFor(() => {
      const all = root.querySelectorAll("#history .entry");
      return all.length >= 2 ? all : null;
    }, 5000, "second history entry");
    const latest = entries[entries.length - 1]!;
    expect(latest.textContent).toContain("arrange the lathis");
    // no window matches, so nothing may move and nothing may crash
    expect(
      root.querySelector(`#viewport g[data-window-id="w-maps"]`),
    ).not.toBeNull();
  }, 15000);
});
