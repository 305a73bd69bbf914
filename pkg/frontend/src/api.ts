/**
 * Typed client for the xrwm HTTP service. Shapes mirror the wire format
 * one-to-one; nothing here re-derives engine state.
 */

export interface SurfaceInfo {
  id: string;
  size: string;
  visibility: number;
  semantic: string;
  current_windows: string[];
  display_name: string;
  area_m2: number;
  extent_u: number;
  extent_v: number;
  centroid: [number, number, number];
  normal: [number, number, number];
  u_axis: [number, number, number];
  v_axis: [number, number, number];
  face_indices: number[];
}

export interface LayoutSlot {
  window_id: string;
  u_offset: number;
  v_offset: number;
  display_w: number;
  display_h: number;
}

export interface SceneMesh {
  scene_id: string;
  vertices: [number, number, number][];
  faces: [number, number, number][];
  labels: string[];
}

export interface HeadPose {
  position: [number, number, number];
  forward: [number, number, number];
  timestamp: number;
}

export interface ScenePayload {
  session_id: string;
  scene: SceneMesh;
  surfaces: SurfaceInfo[];
  layouts: Record<string, LayoutSlot[]>;
  head: HeadPose;
  generation: number;
}

export interface WindowInfo {
  id: string;
  size: string;
  location: string;
  name: string;
}

export interface WorkspacePayload {
  windows: WindowInfo[];
  placements: Record<string, string[]>;
  generation: number;
}

export interface PointingEventBody {
  identifier: string;
  hoverDuration: number;
  timestamp: number;
}

export interface EngineErrorInfo {
  kind: string;
  detail: string;
  [extra: string]: unknown;
}

export interface RequestResult {
  response: string | null;
  actions: [string, string, string][];
  applied: boolean;
  errors: EngineErrorInfo[];
  generation: number;
}

export interface EventsPayload {
  generation: number;
  events: Record<string, unknown>[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public error: EngineErrorInfo | null,
  ) {
    super(error ? `${error.kind}: ${error.detail}` : `HTTP ${status}`);
  }
}

async function parseError(resp: Response): Promise<never> {
  let info: EngineErrorInfo | null = null;
  try {
    const body = (await resp.json()) as { error?: EngineErrorInfo };
    info = body.error ?? null;
  } catch {
    // non-JSON error body; status alone will have to do
  }
  throw new ApiError(resp.status, info);
}

export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, { signal });
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  async health(): Promise<{ status: string; backend: string }> {
    return this.get("/healthz");
  }

  async createSession(): Promise<{ session_id: string; generation: number }> {
    return this.post("/sessions", {});
  }

  async scene(sessionId: string): Promise<ScenePayload> {
    return this.get(`/sessions/${sessionId}/scene`);
  }

  async workspace(sessionId: string): Promise<WorkspacePayload> {
    return this.get(`/sessions/${sessionId}/workspace`);
  }

  async postHead(sessionId: string, pose: HeadPose): Promise<{ generation: number }> {
    return this.post(`/sessions/${sessionId}/head`, pose);
  }

  async postPointing(
    sessionId: string,
    event: PointingEventBody,
  ): Promise<{ generation: number }> {
    return this.post(`/sessions/${sessionId}/pointing`, event);
  }

  async postRequest(sessionId: string, text: string): Promise<RequestResult> {
    return this.post(`/sessions/${sessionId}/request`, { text });
  }

  async events(
    sessionId: string,
    since: number,
    timeoutS: number,
    signal?: AbortSignal,
  ): Promise<EventsPayload> {
    return this.get(
      `/sessions/${sessionId}/events?since=${since}&timeout_s=${timeoutS}`,
      signal,
    );
  }
}
