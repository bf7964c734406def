/** Login view: username/password form posting to /api/login. */

import { ApiError, NetworkError, login } from "../api.js";
import { clear, el } from "../dom.js";

export interface LoginViewOptions {
  notice?: string;
  onSuccess: () => void;
}

export function renderLogin(root: HTMLElement, options: LoginViewOptions): void {
  clear(root);
  const username = el("input", { id: "username", name: "username", autocomplete: "username" });
  const password = el("input", {
    id: "password",
    name: "password",
    type: "password",
    autocomplete: "current-password",
  });
  const message = el("p", { id: "login-message", className: "error" });
  if (options.notice) {
    message.textContent = options.notice;
  }
  const submit = el("button", { id: "login-submit", type: "submit" }, ["Sign in"]);
  const form = el("form", { id: "login-form" }, [
    el("h1", {}, ["Heart disease decision support"]),
    el("label", { htmlFor: "username" }, ["Username"]),
    username,
    el("label", { htmlFor: "password" }, ["Password"]),
    password,
    submit,
    message,
  ]);
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    message.textContent = "";
    submit.disabled = true;
    try {
      await login(username.value, password.value);
      options.onSuccess();
    } catch (err) {
      if (err instanceof NetworkError) {
        // retry banner: the credentials may be fine, the service is not reachable
        message.textContent = "Cannot reach the service. Check the connection and retry.";
      } else if (err instanceof ApiError && err.status === 401) {
        // deliberately generic: never reveal which part was wrong
        message.textContent = "Login failed.";
      } else {
        message.textContent = "Login failed.";
      }
      submit.disabled = false;
    }
  });
  root.append(form);
}
