/** Typed client for the evoshape REST API. */

export interface CandidateView {
  candidate_id: string;
  expression: string;
  shader: string;
}

export interface SessionResponse {
  session_id?: string;
  generation: number;
  candidates: CandidateView[];
}

export interface CreatedSession extends SessionResponse {
  session_id: string;
}

export interface TransformationRecord {
  id: string;
  name: string;
  expression: string;
  created_at: string;
  source_model_id: string | null;
}

export interface ModelJson {
  name: string;
  positions: number[];
  indices: number[];
}

export interface ModelSummary {
  id: string;
  name: string;
  vertex_count: number;
  triangle_count: number;
}

export interface Listing<T> {
  total: number;
  items: T[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class EvoshapeApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let code = "unknown";
      let message = `HTTP ${response.status}`;
      try {
        const payload = (await response.json()) as { error?: { code?: string; message?: string } };
        code = payload.error?.code ?? code;
        message = payload.error?.message ?? message;
      } catch {
        // non-JSON error body; keep the defaults
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  createSession(seed?: number, config?: Record<string, unknown>): Promise<CreatedSession> {
    const body: Record<string, unknown> = {};
    if (seed !== undefined) body.seed = seed;
    if (config !== undefined) body.config = config;
    return this.request("POST", "/api/sessions", body);
  }

  candidates(sessionId: string): Promise<SessionResponse> {
    return this.request("GET", `/api/sessions/${sessionId}/candidates`);
  }

  step(sessionId: string, selected: string[]): Promise<SessionResponse> {
    return this.request("POST", `/api/sessions/${sessionId}/step`, { selected });
  }

  save(sessionId: string, candidateId: string, name: string): Promise<{ transformation_id: string }> {
    return this.request("POST", `/api/sessions/${sessionId}/save`, {
      candidate_id: candidateId,
      name,
    });
  }

  inject(sessionId: string, transformationId: string): Promise<SessionResponse> {
    return this.request("POST", `/api/sessions/${sessionId}/inject`, {
      transformation_id: transformationId,
    });
  }

  listTransformations(offset = 0, limit = 50): Promise<Listing<TransformationRecord>> {
    return this.request("GET", `/api/transformations?offset=${offset}&limit=${limit}`);
  }

  getTransformation(id: string): Promise<TransformationRecord> {
    return this.request("GET", `/api/transformations/${id}`);
  }

  listModels(offset = 0, limit = 50): Promise<Listing<ModelSummary>> {
    return this.request("GET", `/api/models?offset=${offset}&limit=${limit}`);
  }

  getModel(id: string): Promise<ModelSummary & { payload: ModelJson }> {
    return this.request("GET", `/api/models/${id}`);
  }

  uploadModel(model: ModelJson): Promise<{ model_id: string }> {
    return this.request("POST", "/api/models", model);
  }
}
