import { vi } from "vitest";

import { PredictionResult } from "../src/api.js";

/** Minimal Response-shaped object for the fetch mock. */
export function jsonResponse(status: number, body: unknown) {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => body,
  };
}

export function mockFetch(handler: (url: string, init?: RequestInit) => unknown) {
  const fn = vi.fn(async (url: string, init?: RequestInit) => handler(url, init));
  vi.stubGlobal("fetch", fn);
  return fn;
}

export function okResult(id: string, label: 0 | 1, probability: number): PredictionResult {
  return { patient_id: id, label, probability, row_status: "ok" };
}

export function skippedResult(id: string): PredictionResult {
  return { patient_id: id, label: null, probability: null, row_status: "missing_values" };
}

export function batchReport(results: PredictionResult[]) {
  const ok = results.filter((r) => r.row_status === "ok").length;
  return {
    results,
    ok_count: ok,
    skipped_count: results.length - ok,
    model: { loaded: true, model_type: "dnn", metadata: {} },
  };
}

/** 61 rows with original-looking ids, mirroring the desk-scale cohort. */
export function cohortOf61(): PredictionResult[] {
  const rows: PredictionResult[] = [];
  for (let i = 0; i < 61; i += 1) {
    const id = `P${String(i).padStart(3, "0")}`;
    if (i === 13) {
      rows.push(skippedResult(id));
    } else {
      rows.push(okResult(id, (i % 3 === 0 ? 1 : 0) as 0 | 1, i % 3 === 0 ? 0.91 : 0.12));
    }
  }
  return rows;
}

export function selectFile(input: HTMLInputElement, contents: string, name = "cohort.csv") {
  const file = new File([contents], name, { type: "text/csv" });
  Object.defineProperty(input, "files", { value: [file], configurable: true });
}

export async function flush() {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
