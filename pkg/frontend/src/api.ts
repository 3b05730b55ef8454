// Typed client for the /v1 session API.  Every non-2xx response carries
// a structured {code, message, detail} body which surfaces as ApiError;
// transport failures surface as code "network_error" with status 0.

import type {
  ArticleInfo,
  BlockInfo,
  CreateSessionResponse,
  ExportJson,
  SessionView,
  SynthesizeResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: unknown;

  constructor(status: number, code: string, message: string, detail?: unknown) {
    super(message);
    this.status = status;
    this.code = code;
    this.detail = detail;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(`${this.base}${path}`, {
        method,
        headers: body !== undefined ? { "content-type": "application/json" } : undefined,
        body: body !== undefined ? JSON.stringify(body) : undefined,
      });
    } catch (err) {
      throw new ApiError(0, "network_error", String(err));
    }
    if (!resp.ok) {
      let code = "http_error";
      let message = `${resp.status} ${resp.statusText}`;
      let detail: unknown;
      try {
        const parsed = (await resp.json()) as { code?: string; message?: string; detail?: unknown };
        code = parsed.code ?? code;
        message = parsed.message ?? message;
        detail = parsed.detail;
      } catch {
        // non-JSON error body: keep the status line
      }
      throw new ApiError(resp.status, code, message, detail);
    }
    return (await this.json(resp)) as T;
  }

  private async json(resp: Response): Promise<unknown> {
    const text = await resp.text();
    return text ? JSON.parse(text) : null;
  }

  createSession(payload: {
    topic_name: string;
    corpus_path?: string;
    corpus?: unknown[];
    config?: Record<string, unknown>;
  }): Promise<CreateSessionResponse> {
    return this.request("POST", "/v1/sessions", payload);
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  async getBlocks(sessionId: string, label: string): Promise<BlockInfo[]> {
    const out = await this.request<{ label: string; blocks: BlockInfo[] }>(
      "GET",
      `/v1/sessions/${encodeURIComponent(sessionId)}/labels/${encodeURIComponent(label)}/blocks`,
    );
    return out.blocks;
  }

  putLabels(sessionId: string, labels: string[]): Promise<SessionView> {
    return this.request("PUT", `/v1/sessions/${encodeURIComponent(sessionId)}/labels`, { labels });
  }

  putBlocks(
    sessionId: string,
    label: string,
    blockIds: string[],
    edits: Record<string, string>,
  ): Promise<SessionView> {
    return this.request(
      "PUT",
      `/v1/sessions/${encodeURIComponent(sessionId)}/labels/${encodeURIComponent(label)}/blocks`,
      { block_ids: blockIds, edits },
    );
  }

  synthesize(sessionId: string): Promise<SynthesizeResponse> {
    return this.request("POST", `/v1/sessions/${encodeURIComponent(sessionId)}/synthesize`);
  }

  putDraft(sessionId: string, text: string): Promise<SessionView> {
    return this.request("PUT", `/v1/sessions/${encodeURIComponent(sessionId)}/draft`, { text });
  }

  async exportMarkdown(sessionId: string): Promise<string> {
    let resp: Response;
    try {
      resp = await this.fetchFn(
        `${this.base}/v1/sessions/${encodeURIComponent(sessionId)}/export?format=md`,
      );
    } catch (err) {
      throw new ApiError(0, "network_error", String(err));
    }
    if (!resp.ok) {
      const body = (await resp.json().catch(() => ({}))) as { code?: string; message?: string };
      throw new ApiError(resp.status, body.code ?? "http_error", body.message ?? "export failed");
    }
    return resp.text();
  }

  exportJson(sessionId: string): Promise<ExportJson> {
    return this.request("GET", `/v1/sessions/${encodeURIComponent(sessionId)}/export?format=json`);
  }
}

export type { ArticleInfo, BlockInfo, SessionView };
