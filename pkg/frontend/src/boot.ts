/** Browser entry point. The API base defaults to the local dev service. */

import { bootApp } from "./main.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}

bootApp(root, baseUrl).catch((err) => {
  root.textContent = `Failed to start: ${err instanceof Error ? err.message : String(err)}`;
});
