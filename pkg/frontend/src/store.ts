/**
 * Client view state. The workspace and layouts are always whatever the
 * service last said, never locally predicted; the only client-owned
 * state is the camera, the hover target, and the console history.
 */

import type {
  EngineErrorInfo,
  RequestResult,
  ScenePayload,
  WorkspacePayload,
} from "./api.js";
import type { Camera } from "./projection.js";

export interface HistoryEntry {
  text: string;
  response: string | null;
  actions: [string, string, string][];
  applied: boolean;
  errors: EngineErrorInfo[];
  generation: number;
}

export interface ViewState {
  sessionId: string;
  camera: Camera;
  /** generation the event feed has caught up to */
  cursor: number;
  scene: ScenePayload | null;
  workspace: WorkspacePayload | null;
  hoverId: string | null;
  history: HistoryEntry[];
  connected: boolean;
}

export type Listener = (state: ViewState) => void;

export class Store {
  private listeners: Listener[] = [];
  state: ViewState;

  constructor(sessionId: string, camera: Camera) {
    this.state = {
      sessionId,
      camera,
      cursor: 0,
      scene: null,
      workspace: null,
      hoverId: null,
      history: [],
      connected: true,
    };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  setScene(scene: ScenePayload): void {
    this.state.scene = scene;
    this.state.cursor = Math.max(this.state.cursor, scene.generation);
    this.emit();
  }

  setWorkspace(workspace: WorkspacePayload): void {
    this.state.workspace = workspace;
    this.state.cursor = Math.max(this.state.cursor, workspace.generation);
    this.emit();
  }

  setCamera(camera: Camera): void {
    this.state.camera = camera;
    this.emit();
  }

  setHover(hoverId: string | null): void {
    if (this.state.hoverId === hoverId) return;
    this.state.hoverId = hoverId;
    this.emit();
  }

  setConnected(connected: boolean): void {
    if (this.state.connected === connected) return;
    this.state.connected = connected;
    this.emit();
  }

  advanceCursor(generation: number): void {
    this.state.cursor = Math.max(this.state.cursor, generation);
  }

  pushHistory(text: string, result: RequestResult): void {
    this.state.history.push({
      text,
      response: result.response,
      actions: result.actions,
      applied: result.applied,
      errors: result.errors,
      generation: result.generation,
    });
    this.emit();
  }
}
