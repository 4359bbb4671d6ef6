// Transport layer for one live session: REST session creation plus the
// WebSocket stream.  No DOM and no game rules live here, so the same class
// drives both the browser UI and the headless node test harness.

import type {
  ActionName,
  ActionRequestPayload,
  ErrorPayload,
  ResultPayload,
  StatePayload,
  WireMessage,
} from "./protocol.js";

export interface ClientHooks {
  onState?: (state: StatePayload) => void;
  onActionRequest?: (req: ActionRequestPayload) => void;
  onResult?: (result: ResultPayload) => void;
  onError?: (err: ErrorPayload) => void;
  onClose?: () => void;
}

export interface ClientDeps {
  fetchImpl?: typeof fetch;
  // Constructor compatible with the browser WebSocket; node tests inject 'ws'.
  WebSocketImpl?: new (url: string) => WebSocketLike;
}

export interface WebSocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: string, listener: (event: any) => void): void;
}

export class PokerClient {
  readonly baseUrl: string;
  sessionId: string | null = null;
  private hooks: ClientHooks;
  private ws: WebSocketLike | null = null;
  private fetchImpl: typeof fetch;
  private WebSocketImpl: new (url: string) => WebSocketLike;

  constructor(baseUrl: string, hooks: ClientHooks = {}, deps: ClientDeps = {}) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.hooks = hooks;
    this.fetchImpl = deps.fetchImpl ?? fetch.bind(globalThis);
    this.WebSocketImpl =
      deps.WebSocketImpl ?? ((globalThis as any).WebSocket as new (url: string) => WebSocketLike);
  }

  async createSession(displayName?: string, seed?: number): Promise<string> {
    const resp = await this.fetchImpl(`${this.baseUrl}/games`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ display_name: displayName ?? null, seed: seed ?? null }),
    });
    if (!resp.ok) throw new Error(`session creation failed: ${resp.status}`);
    const body = (await resp.json()) as { session_id: string };
    this.sessionId = body.session_id;
    return this.sessionId;
  }

  streamUrl(): string {
    if (!this.sessionId) throw new Error("no session");
    return `${this.baseUrl.replace(/^http/, "ws")}/games/${this.sessionId}/stream`;
  }

  connect(): Promise<void> {
    const ws = new this.WebSocketImpl(this.streamUrl());
    this.ws = ws;
    ws.addEventListener("message", (event: any) => {
      const msg = JSON.parse(
        typeof event.data === "string" ? event.data : event.data.toString()
      ) as WireMessage;
      this.dispatch(msg);
    });
    ws.addEventListener("close", () => this.hooks.onClose?.());
    return new Promise((resolve, reject) => {
      ws.addEventListener("open", () => resolve());
      ws.addEventListener("error", (e: any) => reject(e));
    });
  }

  private dispatch(msg: WireMessage): void {
    switch (msg.kind) {
      case "state":
        this.hooks.onState?.(msg.payload);
        break;
      case "action_request":
        this.hooks.onActionRequest?.(msg.payload);
        break;
      case "result":
        this.hooks.onResult?.(msg.payload);
        break;
      case "error":
        this.hooks.onError?.(msg.payload);
        break;
    }
  }

  submitAction(action: ActionName): void {
    if (!this.ws) throw new Error("not connected");
    this.ws.send(JSON.stringify({ kind: "action_submit", payload: { action } }));
  }

  nextGame(): void {
    if (!this.ws) throw new Error("not connected");
    this.ws.send(JSON.stringify({ kind: "next_game" }));
  }

  async fetchState(): Promise<StatePayload> {
    const resp = await this.fetchImpl(`${this.baseUrl}/games/${this.sessionId}`);
    if (!resp.ok) throw new Error(`state fetch failed: ${resp.status}`);
    return (await resp.json()) as StatePayload;
  }

  close(): void {
    this.ws?.close();
    this.ws = null;
  }
}
