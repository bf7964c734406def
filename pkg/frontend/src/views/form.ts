/** Single-patient entry form: one input per attribute, Fig-2 encodings. */

import { ApiError, NetworkError, predictSingle } from "../api.js";
import { clear, el } from "../dom.js";
import { FIELDS, FieldSpec } from "../fields.js";
import { badge, formatProbability } from "./results.js";

function fieldInput(spec: FieldSpec): HTMLInputElement | HTMLSelectElement {
  if (spec.kind === "select") {
    const select = el("select", { id: `field-${spec.name}`, name: spec.name });
    select.append(el("option", { value: "", selected: true }, ["— select —"]));
    for (const option of spec.options ?? []) {
      select.append(el("option", { value: String(option.value) }, [option.label]));
    }
    return select;
  }
  return el("input", {
    id: `field-${spec.name}`,
    name: spec.name,
    type: "number",
    min: spec.min !== undefined ? String(spec.min) : "",
    step: spec.step !== undefined ? String(spec.step) : "any",
  });
}

export function renderPatientForm(root: HTMLElement): void {
  clear(root);
  const inputs = new Map<string, HTMLInputElement | HTMLSelectElement>();
  const errors = new Map<string, HTMLElement>();
  const grid = el("div", { className: "form-grid" });
  for (const spec of FIELDS) {
    const input = fieldInput(spec);
    const error = el("span", { className: "field-error", id: `error-${spec.name}` });
    inputs.set(spec.name, input);
    errors.set(spec.name, error);
    const caption = spec.unit ? `${spec.label} (${spec.unit})` : spec.label;
    grid.append(
      el("div", { className: "form-field" }, [
        el("label", { htmlFor: `field-${spec.name}` }, [caption]),
        input,
        error,
      ]),
    );
  }
  const submit = el("button", { id: "predict-submit", disabled: true }, ["Diagnose"]);
  const banner = el("p", { id: "predict-error", className: "error" });
  const card = el("div", { id: "diagnosis-card", hidden: true });

  const refresh = () => {
    let complete = true;
    for (const input of inputs.values()) {
      const empty = input.value.trim() === "";
      input.classList.toggle("missing", empty);
      complete &&= !empty;
    }
    submit.disabled = !complete;
  };
  for (const input of inputs.values()) {
    input.addEventListener("input", refresh);
    input.addEventListener("change", refresh);
  }
  refresh();

  submit.addEventListener("click", async () => {
    banner.textContent = "";
    for (const error of errors.values()) {
      error.textContent = "";
    }
    const record: Record<string, number> = {};
    for (const [name, input] of inputs) {
      record[name] = Number(input.value);
    }
    submit.disabled = true;
    try {
      const result = await predictSingle(record);
      clear(card);
      card.hidden = false;
      if (result.label !== null && result.probability !== null) {
        card.append(
          el("h3", {}, ["Diagnosis"]),
          badge(result.label),
          el("p", {}, [`Probability of heart disease: ${formatProbability(result.probability)}`]),
        );
      }
    } catch (err) {
      if (err instanceof NetworkError) {
        banner.textContent = "Cannot reach the service. Check the connection and retry.";
      } else if (err instanceof ApiError && err.status === 422) {
        const details = err.details as { field?: string; message?: string; missing?: string[] };
        if (details?.field && errors.has(details.field)) {
          errors.get(details.field)!.textContent = details.message ?? "invalid value";
        } else if (details?.missing) {
          for (const name of details.missing) {
            inputs.get(name)?.classList.add("missing");
          }
          banner.textContent = `Missing fields: ${details.missing.join(", ")}`;
        } else {
          banner.textContent = err.message;
        }
      } else {
        banner.textContent = "Prediction failed.";
      }
    } finally {
      refresh();
    }
  });

  root.append(el("h2", {}, ["Single patient"]), grid, submit, banner, card);
}
