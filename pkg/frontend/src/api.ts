/** Typed client for the placement service HTTP API. */

export interface UserPose {
  head_position: number[];
  gaze_forward: number[];
  shoulder_position: number[];
  arm_rest_direction: number[];
  arm_length: number;
}

export interface SessionConfig {
  nsga3?: Record<string, number>;
  reduction_k?: number;
  tau?: number;
}

export interface ReducedCandidate {
  id: string;
  position: number[];
  objectives: Record<string, number>;
  objectives_degrees: Record<string, number>;
  mu: number | null;
  is_extreme: boolean;
}

export interface AdaptResponse {
  round: number;
  candidates: ReducedCandidate[];
  front: { size: number; ranges: Record<string, [number, number]> };
  auto_pick: string;
}

export interface FrontPoint {
  position: number[];
  objectives: number[];
  reach_violation: number;
  preference_violation: number;
}

export interface Constraint {
  objective: string;
  upper_bound: number;
}

export interface FrontResponse {
  round: number;
  objective_ids: string[];
  candidates: FrontPoint[];
  ranges: Record<string, [number, number]>;
  constraints: Constraint[];
}

export interface SelectResponse {
  round: number;
  selection: string;
  constraints: Constraint[];
}

export interface SessionSummary {
  id: string;
  pose: UserPose;
  rounds: number;
  selections: (string | null)[];
  constraints: Constraint[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public field?: string
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function parseOrThrow<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(
      response.status,
      body.code ?? "unknown",
      body.message ?? `request failed with ${response.status}`,
      body.field
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init)
  ) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => parseOrThrow<T>(r));
  }

  private get<T>(path: string): Promise<T> {
    return this.fetchFn(`${this.baseUrl}${path}`).then((r) => parseOrThrow<T>(r));
  }

  async createSession(pose: UserPose, config?: SessionConfig): Promise<string> {
    const body: Record<string, unknown> = { pose };
    if (config) body.config = config;
    const created = await this.post<{ id: string }>("/sessions", body);
    return created.id;
  }

  getSession(id: string): Promise<SessionSummary> {
    return this.get(`/sessions/${id}`);
  }

  adapt(id: string, overrides?: Record<string, unknown>): Promise<AdaptResponse> {
    return this.post(`/sessions/${id}/adapt`, overrides ?? {});
  }

  getFront(id: string): Promise<FrontResponse> {
    return this.get(`/sessions/${id}/front`);
  }

  select(id: string, candidateId: string): Promise<SelectResponse> {
    return this.post(`/sessions/${id}/select`, { candidate_id: candidateId });
  }

  eventsUrl(id: string, waitSeconds = 0): string {
    const suffix = waitSeconds > 0 ? `?wait=${waitSeconds}` : "";
    return `${this.baseUrl}/sessions/${id}/events${suffix}`;
  }
}
