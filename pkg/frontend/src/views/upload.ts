/** Cohort upload view: CSV in, one rendered result row per input row. */

import { ApiError, BatchReport, NetworkError, uploadBatch } from "../api.js";
import { clear, el } from "../dom.js";
import { resultsCsv, resultsTable } from "./results.js";

function describeError(err: unknown): string {
  if (err instanceof NetworkError) {
    return "Cannot reach the service. Check the connection and retry.";
  }
  if (err instanceof ApiError) {
    if (err.status === 413) {
      return "The file exceeds the upload size limit.";
    }
    // surface the API's own details verbatim (e.g. the missing column)
    const details = err.details;
    if (details && typeof details === "object" && "missing" in details) {
      const missing = (details as { missing: string[] }).missing;
      return `The file header is missing required columns: ${missing.join(", ")}`;
    }
    return typeof details === "string" ? details : err.message;
  }
  return "Upload failed.";
}

export function renderUpload(root: HTMLElement): void {
  clear(root);
  const file = el("input", { id: "cohort-file", type: "file", accept: ".csv,text/csv" });
  const submit = el("button", { id: "upload-submit" }, ["Diagnose cohort"]);
  const banner = el("p", { id: "upload-error", className: "error" });
  const summary = el("p", { id: "upload-summary" });
  const exportBtn = el("button", { id: "export-csv", hidden: true }, ["Export results CSV"]);
  const tableHolder = el("div", { id: "results-holder" });
  let lastReport: BatchReport | null = null;

  submit.addEventListener("click", async () => {
    banner.textContent = "";
    const chosen = file.files && file.files[0];
    if (!chosen) {
      banner.textContent = "Choose a CSV file first.";
      return;
    }
    submit.disabled = true;
    try {
      const report = await uploadBatch(chosen);
      lastReport = report;
      clear(tableHolder);
      tableHolder.append(resultsTable(report.results));
      summary.textContent =
        `${report.results.length} patients: ${report.ok_count} diagnosed, ` +
        `${report.skipped_count} skipped`;
      exportBtn.hidden = false;
    } catch (err) {
      banner.textContent = describeError(err);
    } finally {
      submit.disabled = false;
    }
  });

  exportBtn.addEventListener("click", () => {
    if (!lastReport) {
      return;
    }
    const blob = new Blob([resultsCsv(lastReport.results)], { type: "text/csv" });
    const link = el("a", {
      href: URL.createObjectURL(blob),
      download: "diagnosis_results.csv",
    });
    link.click();
    URL.revokeObjectURL(link.href);
  });

  root.append(
    el("h2", {}, ["Cohort diagnosis"]),
    el("p", {}, [
      "Upload a CSV with the 13 attribute columns (an id column is optional; ",
      "it is returned with each result).",
    ]),
    file,
    submit,
    banner,
    summary,
    exportBtn,
    tableHolder,
  );
}
