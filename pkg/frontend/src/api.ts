/**
 * Typed client for the annotation service API.
 *
 * The console never computes metrics; every number it shows comes out of
 * one of these four endpoints verbatim.
 */

export interface TaskView {
  task_id: string;
  text: string;
  label_set: string[];
}

export interface ProgressInfo {
  run_id: string;
  kind: string;
  cycle: number;
  label_count: number;
  last_accuracy: number | null;
  pending_tasks: number;
  chosen_cycle: number | null;
}

export interface CyclePoint {
  cycle: number;
  label_count: number;
  accuracy: number;
  precision: number;
  recall: number;
  f1: number;
}

export interface RunDoc {
  run_id: string;
  kind: string;
  cycles: CyclePoint[];
  [key: string]: unknown;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
    this.name = 'ApiError';
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = await response.json();
        if (body && typeof body.detail === 'string') detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  getTasks(): Promise<TaskView[]> {
    return this.request<TaskView[]>('/api/tasks');
  }

  submitLabel(taskId: string, label: string) {
    return this.request<{ task_id: string; status: string; label: string }>(
      `/api/tasks/${encodeURIComponent(taskId)}/label`,
      {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ label }),
      },
    );
  }

  getRun(runId: string): Promise<RunDoc> {
    return this.request<RunDoc>(`/api/run/${encodeURIComponent(runId)}`);
  }

  getProgress(runId: string): Promise<ProgressInfo> {
    return this.request<ProgressInfo>(
      `/api/run/${encodeURIComponent(runId)}/progress`,
    );
  }
}
