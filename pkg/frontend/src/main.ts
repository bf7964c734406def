/** View wiring: login gate, then tabs for cohort upload and the patient form. */

import { hasToken, setExpiryHandler, setToken } from "./api.js";
import { clear, el } from "./dom.js";
import { renderLogin } from "./views/login.js";
import { renderPatientForm } from "./views/form.js";
import { renderUpload } from "./views/upload.js";

export function mountApp(root: HTMLElement): void {
  const showLogin = (notice?: string) => {
    setToken(null);
    renderLogin(root, { notice, onSuccess: showApp });
  };

  const showApp = () => {
    clear(root);
    const content = el("div", { id: "view" });
    const uploadTab = el("button", { id: "tab-upload", className: "tab active" }, ["Cohort upload"]);
    const formTab = el("button", { id: "tab-form", className: "tab" }, ["Single patient"]);
    const logout = el("button", { id: "logout", className: "tab" }, ["Sign out"]);
    uploadTab.addEventListener("click", () => {
      uploadTab.classList.add("active");
      formTab.classList.remove("active");
      renderUpload(content);
    });
    formTab.addEventListener("click", () => {
      formTab.classList.add("active");
      uploadTab.classList.remove("active");
      renderPatientForm(content);
    });
    logout.addEventListener("click", () => showLogin());
    root.append(el("nav", {}, [uploadTab, formTab, logout]), content);
    renderUpload(content);
  };

  setExpiryHandler(() => showLogin("Session expired. Please sign in again."));
  if (hasToken()) {
    showApp();
  } else {
    showLogin();
  }
}

const rootElement = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootElement) {
  mountApp(rootElement);
}
