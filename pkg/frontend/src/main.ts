import { ReaderApp } from "./app.js";

const SERVER_BASE = (window as { READER_SERVER_BASE?: string }).READER_SERVER_BASE ?? "";

function boot(): void {
  const root = document.getElementById("reader-root");
  if (!root) {
    console.error("missing #reader-root element");
    return;
  }
  void new ReaderApp(root, SERVER_BASE).start();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}
