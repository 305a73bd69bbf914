/**
 * Application wiring: session bootstrap, hover-to-pointing capture, the
 * request console, and a long-poll subscription that re-fetches engine
 * state whenever the session generation moves. Rendering is always from
 * confirmed server payloads; nothing is drawn optimistically.
 */

import { ApiClient, type HeadPose, type RequestResult } from "./api.js";
import { monotonicClock, HoverTracker, OrderedQueue } from "./pointing.js";
import { pitch, yaw, type Camera } from "./projection.js";
import { renderSvg, unplacedWindows } from "./render.js";
import { Store, type HistoryEntry } from "./store.js";

const POLL_TIMEOUT_S = 25;
const POLL_RETRY_MS = 500;
const TURN_STEP_RAD = Math.PI / 24;

export interface AppHandle {
  store: Store;
  client: ApiClient;
  queue: OrderedQueue;
  /** Re-fetch scene and workspace and redraw from scratch. */
  refresh(): Promise<void>;
  /** Stop the event poll and detach listeners. */
  stop(): void;
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function historyMarkup(entries: HistoryEntry[]): string {
  if (entries.length === 0) {
    return `<li class="placeholder">No requests yet.</li>`;
  }
  return entries
    .map((entry) => {
      const actions = entry.actions
        .map(
          ([verb, win, surf]) =>
            `<li><code>${esc(verb)} ${esc(win)} → ${esc(surf)}</code></li>`,
        )
        .join("");
      const errors = entry.errors
        .map(
          (err) =>
            `<details class="debug"><summary>${esc(err.kind)}</summary>` +
            `<pre>${esc(err.detail)}</pre></details>`,
        )
        .join("");
      const status = entry.applied ? "applied" : "rejected";
      return (
        `<li class="entry ${status}">` +
        `<p class="said">&gt; ${esc(entry.text)}</p>` +
        `<p class="reply">${esc(entry.response ?? "(no response)")}</p>` +
        (actions ? `<ul class="actions">${actions}</ul>` : "") +
        errors +
        `</li>`
      );
    })
    .join("");
}

function shell(root: HTMLElement): void {
  root.innerHTML =
    `<div class="app">` +
    `<main class="stage">` +
    `<div id="viewport" class="viewport"></div>` +
    `<form id="console" class="console">` +
    `<input id="console-text" name="text" type="text" autocomplete="off"` +
    ` placeholder="Tell the room what you need…"/>` +
    `<button type="submit">Send</button>` +
    `</form>` +
    `</main>` +
    `<aside class="sidebar">` +
    `<p id="status" class="status"></p>` +
    `<section><h2>Unplaced windows</h2><ul id="dock" class="dock"></ul></section>` +
    `<section><h2>Conversation</h2><ol id="history" class="history"></ol></section>` +
    `</aside>` +
    `</div>`;
}

export async function bootApp(root: HTMLElement, baseUrl: string): Promise<AppHandle> {
  const client = new ApiClient(baseUrl);
  const clock = monotonicClock;
  const created = await client.createSession();
  const sessionId = created.session_id;

  const firstScene = await client.scene(sessionId);
  const firstWorkspace = await client.workspace(sessionId);
  const store = new Store(sessionId, {
    position: firstScene.head.position,
    forward: firstScene.head.forward,
  });
  const tracker = new HoverTracker(clock);
  const queue = new OrderedQueue((body) => client.postPointing(sessionId, body));

  shell(root);
  const viewport = root.querySelector("#viewport") as HTMLElement;
  const dock = root.querySelector("#dock") as HTMLElement;
  const history = root.querySelector("#history") as HTMLElement;
  const status = root.querySelector("#status") as HTMLElement;
  const consoleForm = root.querySelector("#console") as HTMLFormElement;
  const consoleText = root.querySelector("#console-text") as HTMLInputElement;

  const draw = () => {
    const { scene, workspace, camera, hoverId, connected } = store.state;
    if (!scene || !workspace) return;
    viewport.innerHTML = renderSvg(scene, workspace, camera, hoverId);
    dock.innerHTML =
      unplacedWindows(workspace)
        .map(
          (w) =>
            `<li data-hover-id="${w.id}" data-window-id="${w.id}">` +
            `${esc(w.name)} <span class="size">${esc(w.size)}</span></li>`,
        )
        .join("") || `<li class="placeholder">Everything is placed.</li>`;
    history.innerHTML = historyMarkup(store.state.history);
    status.textContent = connected
      ? `session ${store.state.sessionId} · generation ${store.state.cursor}`
      : `reconnecting…`;
  };
  store.subscribe(draw);
  store.setScene(firstScene);
  store.setWorkspace(firstWorkspace);

  const refresh = async () => {
    const [scene, workspace] = await Promise.all([
      client.scene(sessionId),
      client.workspace(sessionId),
    ]);
    store.setScene(scene);
    store.setWorkspace(workspace);
  };

  // The pose the engine sees is exactly the camera the renderer uses.
  const postCamera = async (camera: Camera) => {
    store.setCamera(camera);
    const pose: HeadPose = {
      position: camera.position,
      forward: camera.forward,
      timestamp: clock.now(),
    };
    await client.postHead(sessionId, pose);
  };

  await postCamera(store.state.camera);

  const hoverIdOf = (node: EventTarget | null): string | null => {
    if (!(node instanceof Element)) return null;
    const hit = node.closest("[data-hover-id]");
    return hit ? hit.getAttribute("data-hover-id") : null;
  };

  const endHover = () => {
    const event = tracker.leave();
    if (event) queue.enqueue(event);
  };

  const onOver = (e: Event) => {
    const id = hoverIdOf(e.target);
    if (!id || id === tracker.current) return;
    endHover();
    tracker.enter(id);
    store.setHover(id);
  };
  const onOut = (e: Event) => {
    const left = hoverIdOf(e.target);
    if (!left || left !== tracker.current) return;
    const entered = hoverIdOf((e as MouseEvent).relatedTarget);
    if (entered === left) return;
    endHover();
    store.setHover(entered);
    if (entered) tracker.enter(entered);
  };
  root.addEventListener("mouseover", onOver);
  root.addEventListener("mouseout", onOut);

  const onKey = (e: KeyboardEvent) => {
    const cam = store.state.camera;
    let next: Camera | null = null;
    if (e.key === "ArrowLeft") next = yaw(cam, TURN_STEP_RAD);
    else if (e.key === "ArrowRight") next = yaw(cam, -TURN_STEP_RAD);
    else if (e.key === "ArrowUp") next = pitch(cam, TURN_STEP_RAD);
    else if (e.key === "ArrowDown") next = pitch(cam, -TURN_STEP_RAD);
    if (!next) return;
    e.preventDefault();
    void postCamera(next);
  };
  root.ownerDocument.addEventListener("keydown", onKey);

  const onSubmit = async (e: Event) => {
    e.preventDefault();
    const text = consoleText.value.trim();
    if (!text) return;
    consoleText.value = "";
    endHover();
    // pointing context must reach the engine before the request that uses it
    await queue.idle();
    let result: RequestResult;
    try {
      result = await client.postRequest(sessionId, text);
    } catch (err) {
      result = {
        response: `Request failed: ${err instanceof Error ? err.message : String(err)}`,
        actions: [],
        applied: false,
        errors: [{ kind: "transport_error", detail: String(err) }],
        generation: store.state.cursor,
      };
    }
    store.pushHistory(text, result);
    store.advanceCursor(result.generation);
  };
  consoleForm.addEventListener("submit", (e) => void onSubmit(e));

  // Long-poll subscription: any generation bump means some engine state
  // changed, so re-fetch the full payloads rather than patching locally.
  let stopped = false;
  let abort = new AbortController();
  const pollLoop = async () => {
    while (!stopped) {
      try {
        const payload = await client.events(
          sessionId,
          store.state.cursor,
          POLL_TIMEOUT_S,
          abort.signal,
        );
        store.setConnected(true);
        if (payload.events.length > 0 || payload.generation > store.state.cursor) {
          await refresh();
          store.advanceCursor(payload.generation);
        }
      } catch {
        if (stopped) return;
        store.setConnected(false);
        await new Promise((r) => setTimeout(r, POLL_RETRY_MS));
        abort = new AbortController();
      }
    }
  };
  const pollDone = pollLoop();

  const stop = () => {
    stopped = true;
    abort.abort();
    root.removeEventListener("mouseover", onOver);
    root.removeEventListener("mouseout", onOut);
    root.ownerDocument.removeEventListener("keydown", onKey);
    void pollDone;
  };

  return { store, client, queue, refresh, stop };
}
