/** Thin fetch client for the engine's HTTP API. */

import type {
  DemonstrationJson,
  RecommendationSetJson,
  SessionInfoJson,
  UiRequest,
  ViewModelJson,
  VisSpecJson,
  WidgetJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<never> {
  let code = "error";
  let message = response.statusText;
  try {
    const payload = (await response.json()) as {
      error?: { code?: string; message?: string };
    };
    code = payload.error?.code ?? code;
    message = payload.error?.message ?? message;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body ?? {}),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  createSession(body: unknown): Promise<SessionInfoJson> {
    return this.post("/sessions", body);
  }

  getSpec(sid: string): Promise<VisSpecJson> {
    return this.get(`/sessions/${sid}/spec`);
  }

  getView(sid: string): Promise<ViewModelJson | null> {
    return this.get(`/sessions/${sid}/view`);
  }

  getFilters(sid: string): Promise<WidgetJson[]> {
    return this.get(`/sessions/${sid}/filters`);
  }

  getRecommendations(sid: string, full = false): Promise<RecommendationSetJson> {
    return this.get(`/sessions/${sid}/recommendations${full ? "?full=true" : ""}`);
  }

  demonstrate(sid: string, demo: DemonstrationJson): Promise<RecommendationSetJson> {
    return this.post(`/sessions/${sid}/demonstrations`, demo);
  }

  previewRecommendation(sid: string, rid: string): Promise<ViewModelJson> {
    return this.post(`/sessions/${sid}/recommendations/${rid}/preview`, {});
  }

  acceptRecommendation(sid: string, rid: string): Promise<unknown> {
    return this.post(`/sessions/${sid}/recommendations/${rid}/accept`, {});
  }

  rejectRecommendation(sid: string, rid: string): Promise<unknown> {
    return this.post(`/sessions/${sid}/recommendations/${rid}/reject`, {});
  }

  /** Send a UiRequest produced by the gesture layer. */
  send(sid: string, request: UiRequest): Promise<unknown> {
    return this.post(`/sessions/${sid}${request.path}`, request.body);
  }
}
