/** Shared result rendering: diagnosis badges and the cohort results table.
 *
 * Badges derive from the API-provided label alone; this module never
 * computes or re-thresholds a diagnosis.
 */

import { PredictionResult } from "../api.js";
import { el } from "../dom.js";

export function badgeText(label: 0 | 1): string {
  return label === 1 ? "likely" : "unlikely";
}

export function formatProbability(probability: number): string {
  return `${(probability * 100).toFixed(1)}%`;
}

export function badge(label: 0 | 1): HTMLElement {
  return el(
    "span",
    { className: `badge ${label === 1 ? "badge-likely" : "badge-unlikely"}` },
    [badgeText(label)],
  );
}

export function resultRow(result: PredictionResult): HTMLTableRowElement {
  const row = el("tr", { className: `status-${result.row_status}` });
  row.append(el("td", {}, [result.patient_id ?? ""]));
  if (result.row_status === "ok" && result.label !== null && result.probability !== null) {
    row.append(
      el("td", {}, [badge(result.label)]),
      el("td", {}, [formatProbability(result.probability)]),
      el("td", {}, ["ok"]),
    );
  } else {
    // no diagnosis for non-ok rows, only the status
    row.append(
      el("td", {}, [""]),
      el("td", {}, [""]),
      el("td", {}, [result.row_status.replace("_", " ")]),
    );
  }
  return row;
}

export function resultsTable(results: PredictionResult[]): HTMLTableElement {
  const head = el("tr", {}, [
    el("th", {}, ["Patient ID"]),
    el("th", {}, ["Diagnosis"]),
    el("th", {}, ["Probability"]),
    el("th", {}, ["Status"]),
  ]);
  const table = el("table", { className: "results" });
  table.append(el("thead", {}, [head]));
  table.append(el("tbody", {}, results.map(resultRow)));
  return table;
}

function csvCell(value: string): string {
  return /[",\n]/.test(value) ? `"${value.replace(/"/g, '""')}"` : value;
}

/** CSV of exactly what the table shows, one line per uploaded row. */
export function resultsCsv(results: PredictionResult[]): string {
  const lines = ["patient_id,diagnosis,probability,status"];
  for (const r of results) {
    const ok = r.row_status === "ok" && r.label !== null && r.probability !== null;
    lines.push(
      [
        csvCell(r.patient_id ?? ""),
        ok ? badgeText(r.label as 0 | 1) : "",
        ok ? formatProbability(r.probability as number) : "",
        r.row_status,
      ].join(","),
    );
  }
  return lines.join("\n") + "\n";
}
