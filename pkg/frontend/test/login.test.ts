import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { setToken } from "../src/api.js";
import { mountApp } from "../src/main.js";
import { renderLogin } from "../src/views/login.js";
import { flush, jsonResponse, mockFetch } from "./helpers.js";

let root: HTMLElement;

beforeEach(() => {
  root = document.createElement("div");
  document.body.append(root);
});

afterEach(() => {
  vi.unstubAllGlobals();
  setToken(null);
  document.body.innerHTML = "";
});

function signIn(username = "clinician", password = "pw") {
  (root.querySelector("#username") as HTMLInputElement).value = username;
  (root.querySelector("#password") as HTMLInputElement).value = password;
  (root.querySelector("#login-form") as HTMLFormElement).dispatchEvent(
    new Event("submit", { bubbles: true, cancelable: true }),
  );
  return flush();
}

describe("login view", () => {
  it("navigates on success", async () => {
    mockFetch(() => jsonResponse(200, { token: "tk", expires_at: "later" }));
    const onSuccess = vi.fn();
    renderLogin(root, { onSuccess });
    await signIn();
    expect(onSuccess).toHaveBeenCalledOnce();
  });

  it("shows one generic failure message regardless of what was wrong", async () => {
    renderLogin(root, { onSuccess: vi.fn() });
    mockFetch(() => jsonResponse(401, { error: "authentication_failed", details: "x" }));
    await signIn("clinician", "typo");
    const first = root.querySelector("#login-message")!.textContent;
    mockFetch(() => jsonResponse(401, { error: "authentication_failed", details: "x" }));
    await signIn("unknown-user", "pw");
    expect(root.querySelector("#login-message")!.textContent).toBe(first);
    expect(first).toBe("Login failed.");
  });

  it("offers a retry banner on network failure", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => {
      throw new TypeError("down");
    }));
    renderLogin(root, { onSuccess: vi.fn() });
    await signIn();
    expect(root.querySelector("#login-message")!.textContent).toContain("retry");
  });

  it("never renders the token anywhere in the page", async () => {
    mockFetch(() => jsonResponse(200, { token: "s3cret-token-value", expires_at: "later" }));
    mountApp(root);
    await signIn();
    expect(document.body.innerHTML).not.toContain("s3cret-token-value");
  });
});

describe("session flow", () => {
  it("returns to login with a notice when the API reports expiry", async () => {
    mockFetch(() => jsonResponse(200, { token: "tk", expires_at: "later" }));
    mountApp(root);
    await signIn();
    expect(root.querySelector("#cohort-file")).not.toBeNull();

    // next API call answers 401: the app must drop back to the login view
    mockFetch(() => jsonResponse(401, { error: "unauthorized", details: "expired" }));
    const { modelInfo } = await import("../src/api.js");
    await expect(modelInfo()).rejects.toBeTruthy();
    expect(root.querySelector("#login-form")).not.toBeNull();
    expect(root.querySelector("#login-message")!.textContent).toContain("Session expired");
  });

  it("sign out returns to the login view", async () => {
    mockFetch(() => jsonResponse(200, { token: "tk", expires_at: "later" }));
    mountApp(root);
    await signIn();
    (root.querySelector("#logout") as HTMLButtonElement).click();
    expect(root.querySelector("#login-form")).not.toBeNull();
  });
});
