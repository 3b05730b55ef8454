// Browser entry point: resume the session named in ?session=, or show a
// minimal create form that posts a corpus path to the service.

import { ApiClient } from "./api.js";
import { mountApp } from "./app.js";

const client = new ApiClient("");
const root = document.getElementById("app")!;

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const sessionId = params.get("session");
  if (sessionId) {
    await mountApp(root, { client, sessionId });
    return;
  }
  root.innerHTML = `
    <section class="create-form">
      <h2>start a synthesis session</h2>
      <div class="error-banner" style="display:none"></div>
      <label>topic name <input id="topic-name" type="text"/></label>
      <label>corpus path (on the server) <input id="corpus-path" type="text"/></label>
      <button id="create-session">Create</button>
    </section>`;
  document.getElementById("create-session")!.addEventListener("click", async () => {
    const topic = (document.getElementById("topic-name") as HTMLInputElement).value.trim();
    const corpusPath = (document.getElementById("corpus-path") as HTMLInputElement).value.trim();
    const banner = root.querySelector<HTMLElement>(".error-banner")!;
    if (!topic || !corpusPath) {
      banner.textContent = "topic name and corpus path are required";
      banner.style.display = "block";
      return;
    }
    try {
      const created = await client.createSession({ topic_name: topic, corpus_path: corpusPath });
      const url = new URL(window.location.href);
      url.searchParams.set("session", created.session_id);
      window.history.replaceState(null, "", url);
      await mountApp(root, { client, sessionId: created.session_id });
    } catch (err) {
      banner.textContent = String(err);
      banner.style.display = "block";
    }
  });
}

void boot();
