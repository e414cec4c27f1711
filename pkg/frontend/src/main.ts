import { SessionController } from "./controller.js";

const DEFAULT_SERVER = "http://127.0.0.1:8631";

const EXAMPLE_SPEC = `{
  "frame": ["u1", "u2", "u3"],
  "constraints": [
    {"set": ["u1", "u2"], "belief": "0.5"},
    {"set": ["u2", "u3"], "belief": "0.5"},
    {"set": ["u1", "u3"], "belief": "0.5"}
  ]
}`;

function main(): void {
  const root = document.getElementById("session-root");
  const serverInput = document.getElementById("server-url") as HTMLInputElement;
  const specInput = document.getElementById("spec-input") as HTMLTextAreaElement;
  const createButton = document.getElementById("create-button") as HTMLButtonElement;
  const fileInput = document.getElementById("spec-file") as HTMLInputElement;
  const errorBox = document.getElementById("create-error") as HTMLElement;
  if (!root || !serverInput || !specInput || !createButton || !fileInput || !errorBox) {
    return;
  }
  serverInput.value = DEFAULT_SERVER;
  specInput.value = EXAMPLE_SPEC;

  const controller = new SessionController(root, serverInput.value, (id) => {
    window.location.hash = id ?? "";
  });
  serverInput.addEventListener("change", () => controller.setBaseUrl(serverInput.value));

  const report = (error: unknown) => {
    errorBox.textContent = error instanceof Error ? error.message : String(error);
    errorBox.hidden = false;
  };

  createButton.addEventListener("click", () => {
    errorBox.hidden = true;
    controller.create(specInput.value).catch(report);
  });

  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file) {
      return;
    }
    void file.text().then((text) => {
      specInput.value = text;
    });
  });

  const hash = window.location.hash.replace(/^#/, "");
  if (hash) {
    controller.resume(hash).catch(report);
  }
}

document.addEventListener("DOMContentLoaded", main);
