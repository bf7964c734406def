import { afterEach, describe, expect, it, vi } from "vitest";

import {
  ApiError,
  NetworkError,
  hasToken,
  login,
  modelInfo,
  predictSingle,
  setExpiryHandler,
  setToken,
} from "../src/api.js";
import { jsonResponse, mockFetch } from "./helpers.js";

afterEach(() => {
  vi.unstubAllGlobals();
  setToken(null);
  setExpiryHandler(() => {});
});

describe("login", () => {
  it("stores the token and sends it as a bearer header afterwards", async () => {
    const fetchMock = mockFetch((url) => {
      if (url.endsWith("/api/login")) {
        return jsonResponse(200, { token: "t0ken", expires_at: "2026-01-01T00:00:00+00:00" });
      }
      return jsonResponse(200, { loaded: true, model_type: "dnn", metadata: {} });
    });
    await login("clinician", "pw");
    expect(hasToken()).toBe(true);
    await modelInfo();
    const headers = (fetchMock.mock.calls[1][1] as RequestInit).headers as Record<string, string>;
    expect(headers.Authorization).toBe("Bearer t0ken");
  });

  it("raises ApiError with the service status on bad credentials", async () => {
    mockFetch(() => jsonResponse(401, { error: "authentication_failed", details: "no" }));
    await expect(login("x", "y")).rejects.toBeInstanceOf(ApiError);
    expect(hasToken()).toBe(false);
  });

  it("maps fetch failures to NetworkError", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => {
      throw new TypeError("connection refused");
    }));
    await expect(login("x", "y")).rejects.toBeInstanceOf(NetworkError);
  });
});

describe("session expiry", () => {
  it("fires the expiry handler and drops the token on 401", async () => {
    setToken("stale");
    const expired = vi.fn();
    setExpiryHandler(expired);
    mockFetch(() => jsonResponse(401, { error: "unauthorized", details: "expired" }));
    await expect(predictSingle({ age: 60 })).rejects.toBeInstanceOf(ApiError);
    expect(expired).toHaveBeenCalledOnce();
    expect(hasToken()).toBe(false);
  });

  it("does not fire the handler for a plain failed login", async () => {
    const expired = vi.fn();
    setExpiryHandler(expired);
    mockFetch(() => jsonResponse(401, { error: "authentication_failed", details: "no" }));
    await expect(login("x", "y")).rejects.toBeInstanceOf(ApiError);
    expect(expired).not.toHaveBeenCalled();
  });
});

describe("api base", () => {
  it("prefixes requests with window.HEARTML_API_BASE", async () => {
    (window as Window).HEARTML_API_BASE = "http://api.example:9000";
    const fetchMock = mockFetch(() => jsonResponse(200, { token: "t" }));
    await login("a", "b");
    expect(fetchMock.mock.calls[0][0]).toBe("http://api.example:9000/api/login");
    delete (window as Window).HEARTML_API_BASE;
  });
});
