import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { setToken } from "../src/api.js";
import { FIELDS } from "../src/fields.js";
import { renderPatientForm } from "../src/views/form.js";
import { flush, jsonResponse, mockFetch } from "./helpers.js";

let root: HTMLElement;

beforeEach(() => {
  setToken("session-token");
  root = document.createElement("div");
  document.body.append(root);
  renderPatientForm(root);
});

afterEach(() => {
  vi.unstubAllGlobals();
  setToken(null);
  document.body.innerHTML = "";
});

const SAMPLE: Record<string, number> = {
  age: 63, sex: 1, cp: 1, trestbps: 145, chol: 233, fbs: 1, restecg: 2,
  thalach: 150, exang: 0, oldpeak: 2.3, slope: 3, ca: 0, thal: 6,
};

function fillForm(values = SAMPLE) {
  for (const [name, value] of Object.entries(values)) {
    const input = root.querySelector(`#field-${name}`) as HTMLInputElement | HTMLSelectElement;
    input.value = String(value);
    input.dispatchEvent(new Event("input", { bubbles: true }));
    input.dispatchEvent(new Event("change", { bubbles: true }));
  }
}

function optionsOf(name: string): [string, string][] {
  const select = root.querySelector(`#field-${name}`) as HTMLSelectElement;
  return Array.from(select.options)
    .filter((o) => o.value !== "")
    .map((o) => [o.value, o.textContent ?? ""]);
}

describe("attribute encodings", () => {
  it("sex offers male (1) / female (0)", () => {
    expect(optionsOf("sex")).toEqual([
      ["1", "male (1)"],
      ["0", "female (0)"],
    ]);
  });

  it("thal offers 3 normal, 6 fixed defect, 7 reversible defect", () => {
    expect(optionsOf("thal")).toEqual([
      ["3", "normal (3)"],
      ["6", "fixed defect (6)"],
      ["7", "reversible defect (7)"],
    ]);
  });

  it("chest pain covers the four codes with their names", () => {
    expect(optionsOf("cp")).toEqual([
      ["1", "typical angina (1)"],
      ["2", "atypical angina (2)"],
      ["3", "non-anginal pain (3)"],
      ["4", "asymptomatic (4)"],
    ]);
  });

  it("slope and vessel counts match their code sets", () => {
    expect(optionsOf("slope").map(([v]) => v)).toEqual(["1", "2", "3"]);
    expect(optionsOf("ca").map(([v]) => v)).toEqual(["0", "1", "2", "3"]);
  });

  it("continuous fields carry their units", () => {
    const label = (name: string) =>
      (root.querySelector(`label[for="field-${name}"]`) as HTMLElement).textContent;
    expect(label("trestbps")).toContain("mmHg");
    expect(label("chol")).toContain("mg/dl");
    expect(label("thalach")).toContain("bpm");
  });

  it("renders one input per attribute", () => {
    expect(root.querySelectorAll("input, select")).toHaveLength(FIELDS.length);
  });
});

describe("client-side validation", () => {
  it("submit stays disabled until every field is filled, empty ones highlighted", () => {
    const submit = root.querySelector("#predict-submit") as HTMLButtonElement;
    expect(submit.disabled).toBe(true);
    const partial = { ...SAMPLE };
    delete (partial as Record<string, number>).thal;
    fillForm(partial);
    expect(submit.disabled).toBe(true);
    const thal = root.querySelector("#field-thal") as HTMLSelectElement;
    expect(thal.classList.contains("missing")).toBe(true);
    fillForm();
    expect(submit.disabled).toBe(false);
    expect(thal.classList.contains("missing")).toBe(false);
  });
});

describe("diagnosis card", () => {
  it("posts the record and shows the API-provided probability and badge", async () => {
    const fetchMock = mockFetch(() =>
      jsonResponse(200, { patient_id: null, label: 1, probability: 0.876, row_status: "ok" }),
    );
    fillForm();
    (root.querySelector("#predict-submit") as HTMLButtonElement).click();
    await flush();
    const sent = JSON.parse((fetchMock.mock.calls[0][1] as RequestInit).body as string);
    expect(sent).toEqual(SAMPLE);
    const card = root.querySelector("#diagnosis-card") as HTMLElement;
    expect(card.hidden).toBe(false);
    expect(card.querySelector(".badge")!.textContent).toBe("likely");
    expect(card.textContent).toContain("87.6%");
  });

  it("renders a 422 invalid_value on the named field", async () => {
    mockFetch(() =>
      jsonResponse(422, {
        error: "invalid_value",
        details: { field: "cp", message: "cp=7 outside allowed set {1, 2, 3, 4}", allowed: [1, 2, 3, 4] },
      }),
    );
    fillForm();
    (root.querySelector("#predict-submit") as HTMLButtonElement).click();
    await flush();
    expect(root.querySelector("#error-cp")!.textContent).toContain("allowed set {1, 2, 3, 4}");
  });
});
