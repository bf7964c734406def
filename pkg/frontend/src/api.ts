/** Typed client for the diagnosis REST API.
 *
 * The bearer token lives in module memory only; it is never written to
 * storage or rendered into the page.
 */

export interface PredictionResult {
  patient_id: string | null;
  label: 0 | 1 | null;
  probability: number | null;
  row_status: "ok" | "missing_values" | "invalid_value";
}

export interface BatchReport {
  results: PredictionResult[];
  ok_count: number;
  skipped_count: number;
  model: { loaded: boolean; model_type: string | null; metadata: unknown };
}

export interface ModelInfo {
  loaded: boolean;
  model_type: string | null;
  metadata: { metrics?: Record<string, number> } | null;
  uptime_seconds?: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public error: string,
    public details: unknown,
  ) {
    super(`${error} (${status})`);
  }
}

export class NetworkError extends Error {}

declare global {
  interface Window {
    HEARTML_API_BASE?: string;
  }
}

/** Base URL; same-origin by default, overridable before the bundle loads. */
export function apiBase(): string {
  return (typeof window !== "undefined" && window.HEARTML_API_BASE) || "";
}

let token: string | null = null;

export function setToken(value: string | null): void {
  token = value;
}

export function hasToken(): boolean {
  return token !== null;
}

type OnExpired = () => void;
let onExpired: OnExpired | null = null;

/** Called whenever the API answers 401 with a token present (session expiry). */
export function setExpiryHandler(handler: OnExpired): void {
  onExpired = handler;
}

async function request(path: string, init: RequestInit): Promise<unknown> {
  let response: Response;
  try {
    response = await fetch(apiBase() + path, init);
  } catch {
    throw new NetworkError("cannot reach the diagnosis service");
  }
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    body = null;
  }
  if (!response.ok) {
    const rec = (body ?? {}) as { error?: string; details?: unknown };
    if (response.status === 401 && token !== null && onExpired) {
      setToken(null);
      onExpired();
    }
    throw new ApiError(response.status, rec.error ?? "error", rec.details ?? null);
  }
  return body;
}

function authHeaders(): Record<string, string> {
  return token ? { Authorization: `Bearer ${token}` } : {};
}

export async function login(username: string, password: string): Promise<void> {
  const body = (await request("/api/login", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ username, password }),
  })) as { token: string };
  setToken(body.token);
}

export async function predictSingle(
  record: Record<string, number>,
): Promise<PredictionResult> {
  return (await request("/api/predict", {
    method: "POST",
    headers: { "Content-Type": "application/json", ...authHeaders() },
    body: JSON.stringify(record),
  })) as PredictionResult;
}

export async function uploadBatch(file: File | Blob): Promise<BatchReport> {
  const form = new FormData();
  form.append("file", file);
  return (await request("/api/upload", {
    method: "POST",
    headers: authHeaders(),
    body: form,
  })) as BatchReport;
}

export async function modelInfo(): Promise<ModelInfo> {
  return (await request("/api/model", {
    method: "GET",
    headers: authHeaders(),
  })) as ModelInfo;
}
