// Browser bootstrap: read config, restore state from the URL, keep the URL
// in sync as the user navigates.

import { ApiClient, type ApiConfig } from "./api.js";
import { App } from "./app.js";
import { serializeState } from "./state.js";

declare global {
  interface Window {
    HOSPKPI_CONFIG?: Partial<ApiConfig>;
  }
}

function config(): ApiConfig {
  return {
    baseUrl: window.HOSPKPI_CONFIG?.baseUrl ?? "http://127.0.0.1:8000",
    token: window.HOSPKPI_CONFIG?.token,
  };
}

function start(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const app = App.fromUrl(root, new ApiClient(config()), {
    onStateChange: (state) => {
      const hash = `#${serializeState(state)}`;
      if (window.location.hash !== hash) {
        history.replaceState(null, "", hash);
      }
    },
  });
  void app.load();
}

document.addEventListener("DOMContentLoaded", start);
