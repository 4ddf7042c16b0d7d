/** Typed client for the engine's HTTP API. The UI performs no business
 * logic: every state change goes through these calls. */

import type {
  ApiError,
  InstanceStatus,
  ModelRecord,
  Role,
  Task,
} from "./types.js";

export class ApiCallError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ApiError,
  ) {
    super(payload.detail || payload.error);
  }

  /** A complete on a request someone else already handled. */
  get taskAlreadyHandled(): boolean {
    return this.status === 404 && this.payload.error === "UnknownRequestId";
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    public role: Role = "user",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request(path: string, init: RequestInit = {}): Promise<unknown> {
    const headers = new Headers(init.headers);
    headers.set("X-Role", this.role);
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      ...init,
      headers,
    });
    if (response.status === 204) return null;
    const body = (await response.json().catch(() => ({
      error: "BadResponse",
      detail: `status ${response.status}`,
    }))) as unknown;
    if (!response.ok) {
      throw new ApiCallError(response.status, body as ApiError);
    }
    return body;
  }

  health(): Promise<unknown> {
    return this.request("/health");
  }

  listModels(): Promise<ModelRecord[]> {
    return this.request("/models") as Promise<ModelRecord[]>;
  }

  uploadModel(filename: string, content: Blob | string, kind: string): Promise<ModelRecord> {
    const form = new FormData();
    const blob =
      typeof content === "string" ? new Blob([content], { type: "application/xml" }) : content;
    form.append("file", blob, filename);
    form.append("kind", kind);
    return this.request("/models", { method: "POST", body: form }) as Promise<ModelRecord>;
  }

  startInstance(modelId: string, name: string): Promise<{ instanceId: string }> {
    return this.request(`/models/${encodeURIComponent(modelId)}/instances`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ name }),
    }) as Promise<{ instanceId: string }>;
  }

  stopInstance(instanceId: string): Promise<unknown> {
    return this.request(`/instances/${encodeURIComponent(instanceId)}`, {
      method: "DELETE",
    });
  }

  instanceStatus(instanceId: string): Promise<InstanceStatus> {
    return this.request(
      `/instances/${encodeURIComponent(instanceId)}/status`,
    ) as Promise<InstanceStatus>;
  }

  listTasks(instanceId?: string): Promise<Task[]> {
    const query = instanceId ? `?instance=${encodeURIComponent(instanceId)}` : "";
    return this.request(`/tasks${query}`) as Promise<Task[]>;
  }

  completeTask(
    requestId: number,
    values: Record<string, unknown>,
    choice: string | null,
  ): Promise<unknown> {
    return this.request(`/tasks/${requestId}/complete`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ values, choice }),
    });
  }
}
