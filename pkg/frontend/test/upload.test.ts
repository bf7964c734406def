import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { setToken } from "../src/api.js";
import { renderUpload } from "../src/views/upload.js";
import { batchReport, cohortOf61, flush, jsonResponse, mockFetch, selectFile } from "./helpers.js";

let root: HTMLElement;

beforeEach(() => {
  setToken("session-token");
  root = document.createElement("div");
  document.body.append(root);
  renderUpload(root);
});

afterEach(() => {
  vi.unstubAllGlobals();
  setToken(null);
  document.body.innerHTML = "";
});

function upload(contents = "id,age\n1,63\n") {
  selectFile(root.querySelector("#cohort-file") as HTMLInputElement, contents);
  (root.querySelector("#upload-submit") as HTMLButtonElement).click();
  return flush();
}

describe("cohort upload", () => {
  it("renders 61 rows with the original ids, in order, with badges", async () => {
    const results = cohortOf61();
    mockFetch(() => jsonResponse(200, batchReport(results)));
    await upload();
    const rows = Array.from(root.querySelectorAll("tbody tr"));
    expect(rows).toHaveLength(61);
    expect(rows.map((r) => r.children[0].textContent)).toEqual(results.map((r) => r.patient_id));
    expect(rows[0].querySelector(".badge")!.textContent).toBe("likely");
    expect(root.querySelector("#upload-summary")!.textContent).toBe(
      "61 patients: 60 diagnosed, 1 skipped",
    );
  });

  it("shows the missing-values row as skipped, others diagnosed", async () => {
    mockFetch(() => jsonResponse(200, batchReport(cohortOf61())));
    await upload();
    const skipped = root.querySelectorAll("tr.status-missing_values");
    expect(skipped).toHaveLength(1);
    expect(skipped[0].textContent).toContain("missing values");
    expect(skipped[0].querySelector(".badge")).toBeNull();
  });

  it("sends the file as multipart form data with the bearer token", async () => {
    const fetchMock = mockFetch(() => jsonResponse(200, batchReport(cohortOf61())));
    await upload("id,age\n7,51\n");
    const init = fetchMock.mock.calls[0][1] as RequestInit;
    expect(init.body).toBeInstanceOf(FormData);
    expect((init.headers as Record<string, string>).Authorization).toBe("Bearer session-token");
  });

  it("names the missing column from a 422 verbatim", async () => {
    mockFetch(() =>
      jsonResponse(422, { error: "missing_columns", details: { missing: ["chol"] } }),
    );
    await upload();
    expect(root.querySelector("#upload-error")!.textContent).toContain("chol");
    expect(root.querySelectorAll("tbody tr")).toHaveLength(0);
  });

  it("explains the 413 size limit", async () => {
    mockFetch(() => jsonResponse(413, { error: "too_large", details: "upload exceeds 1048576 bytes" }));
    await upload();
    expect(root.querySelector("#upload-error")!.textContent).toContain("size limit");
  });

  it("never invents rows: rendered count always equals the report", async () => {
    for (const n of [1, 5, 17]) {
      const results = cohortOf61().slice(0, n);
      mockFetch(() => jsonResponse(200, batchReport(results)));
      await upload();
      expect(root.querySelectorAll("tbody tr")).toHaveLength(n);
    }
  });
});
