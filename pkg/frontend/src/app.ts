// Single-page UI over the /v1 session API with three screens: a label
// board (choose and reorder subtopics), a block picker per chosen
// subtopic (choose, page, edit), and a draft editor with export.  The
// server session is the source of truth: every screen renders from the
// last confirmed server state plus pending local input, and a reload
// reconstructs itself from GET /sessions/{id}.

import { ApiClient, ApiError } from "./api.js";
import { makeReorderable } from "./dnd.js";
import {
  BlockDraft,
  blockDraftFromSession,
  hasMore,
  moveItem,
  pageOf,
  provenanceTitle,
  setEdit,
  stageAfter,
  toggleItem,
  validateBlockSelection,
  validateLabelSelection,
} from "./state.js";
import type { ArticleInfo, BlockInfo, SessionView } from "./types.js";

const PAGE_SIZE = 5;

export interface AppOptions {
  client: ApiClient;
  sessionId: string;
  // export hook so tests (and embedding pages) can capture downloads
  onDownload?: (filename: string, content: string) => void;
}

export async function mountApp(root: HTMLElement, opts: AppOptions): Promise<App> {
  const app = new App(root, opts);
  await app.reload();
  return app;
}

export class App {
  readonly root: HTMLElement;
  readonly client: ApiClient;
  readonly sessionId: string;
  private readonly onDownload: (filename: string, content: string) => void;

  view!: SessionView;
  article: ArticleInfo | null = null;

  labelSelection: string[] = [];
  blockCache = new Map<string, BlockInfo[]>();
  blockDrafts = new Map<string, BlockDraft>();
  currentLabelIndex = 0;
  draftText = "";
  pendingSave: string | null = null;

  constructor(root: HTMLElement, opts: AppOptions) {
    this.root = root;
    this.client = opts.client;
    this.sessionId = opts.sessionId;
    this.onDownload =
      opts.onDownload ??
      ((filename, content) => {
        const url = URL.createObjectURL(new Blob([content]));
        const a = document.createElement("a");
        a.href = url;
        a.download = filename;
        a.click();
        URL.revokeObjectURL(url);
      });
  }

  /** Re-fetch the session and render whichever screen its stage implies. */
  async reload(): Promise<void> {
    this.view = await this.client.getSession(this.sessionId);
    this.labelSelection = [...this.view.chosen_labels];
    this.draftText = this.view.final_draft ?? "";
    const screen = stageAfter(this.view);
    if (screen === "draft") this.renderDraft();
    else if (screen === "blocks") this.renderBlocks();
    else this.renderLabels();
  }

  private setError(message: string | null): void {
    const banner = this.root.querySelector<HTMLElement>(".error-banner");
    if (!banner) return;
    banner.textContent = message ?? "";
    banner.style.display = message ? "block" : "none";
  }

  private async guarded(action: () => Promise<void>): Promise<void> {
    try {
      await action();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.renderRerunBanner(err.message);
      } else if (err instanceof ApiError) {
        this.setError(`${err.code}: ${err.message}`);
      } else {
        this.setError(String(err));
      }
    }
  }

  private renderRerunBanner(message: string): void {
    const el = document.createElement("div");
    el.className = "rerun-banner";
    el.textContent = `session state moved on: re-run required (${message})`;
    this.root.prepend(el);
  }

  // ---- screen 1: label board -------------------------------------------

  renderLabels(): void {
    const options = this.view.labels
      .map(
        (l) => `
        <li class="label-option" data-surface="${escapeHtml(l.surface)}">
          <label>
            <input type="checkbox" ${this.labelSelection.includes(l.surface) ? "checked" : ""}/>
            <span class="surface">${escapeHtml(l.surface)}</span>
            <span class="score">${l.score.toFixed(3)}</span>
          </label>
        </li>`,
      )
      .join("");
    const chosen = this.labelSelection
      .map(
        (s, i) => `
        <li draggable="true" data-index="${i}">
          <span>${escapeHtml(s)}</span>
          <button class="move-up" data-index="${i}">up</button>
          <button class="move-down" data-index="${i}">down</button>
        </li>`,
      )
      .join("");
    this.root.innerHTML = `
      <section class="label-board">
        <h2>${escapeHtml(this.view.topic_name)}: subtopics</h2>
        <div class="error-banner" style="display:none"></div>
        <ul class="label-options">${options}</ul>
        <h3>chosen order</h3>
        <ul class="selected-labels">${chosen}</ul>
        <button id="confirm-labels">Confirm subtopics</button>
        <button id="one-click">Synthesize now</button>
      </section>`;

    for (const li of this.root.querySelectorAll<HTMLElement>(".label-option")) {
      li.querySelector("input")!.addEventListener("change", () => {
        this.labelSelection = toggleItem(this.labelSelection, li.dataset.surface!);
        this.renderLabels();
      });
    }
    const selectedList = this.root.querySelector<HTMLElement>(".selected-labels")!;
    makeReorderable(selectedList, (from, to) => {
      this.labelSelection = moveItem(this.labelSelection, from, to);
      this.renderLabels();
    });
    for (const btn of this.root.querySelectorAll<HTMLButtonElement>(".move-up")) {
      btn.addEventListener("click", () => {
        const i = Number(btn.dataset.index);
        this.labelSelection = moveItem(this.labelSelection, i, i - 1);
        this.renderLabels();
      });
    }
    for (const btn of this.root.querySelectorAll<HTMLButtonElement>(".move-down")) {
      btn.addEventListener("click", () => {
        const i = Number(btn.dataset.index);
        this.labelSelection = moveItem(this.labelSelection, i, i + 1);
        this.renderLabels();
      });
    }
    this.root.querySelector("#confirm-labels")!.addEventListener("click", () => {
      const problem = validateLabelSelection(this.labelSelection);
      if (problem) {
        this.setError(problem); // inline validation, no request
        return;
      }
      void this.guarded(async () => {
        this.view = await this.client.putLabels(this.sessionId, this.labelSelection);
        this.currentLabelIndex = 0;
        this.renderBlocks();
      });
    });
    this.root.querySelector("#one-click")!.addEventListener("click", () => {
      void this.guarded(async () => {
        const out = await this.client.synthesize(this.sessionId);
        this.article = out.article;
        this.draftText = out.markdown;
        this.view.stage = out.stage;
        this.renderDraft();
      });
    });
  }

  // ---- screen 2: block picker -------------------------------------------

  private currentLabel(): string {
    return this.view.chosen_labels[this.currentLabelIndex];
  }

  private draftFor(label: string): BlockDraft {
    let draft = this.blockDrafts.get(label);
    if (!draft) {
      draft = blockDraftFromSession(this.view, label);
      this.blockDrafts.set(label, draft);
    }
    return draft;
  }

  renderBlocks(): void {
    const label = this.currentLabel();
    const blocks = this.blockCache.get(label);
    if (!blocks) {
      void this.guarded(async () => {
        this.blockCache.set(label, await this.client.getBlocks(this.sessionId, label));
        this.renderBlocks();
      });
      this.root.innerHTML = `<section class="block-picker"><div class="error-banner" style="display:none"></div><p>loading blocks for ${escapeHtml(label)}...</p></section>`;
      return;
    }
    const draft = this.draftFor(label);
    const visible = pageOf(blocks, draft.page, PAGE_SIZE);
    const items = visible
      .map((b) => {
        const picked = draft.selected.includes(b.block_id);
        const text = draft.edits[b.block_id] ?? b.text;
        const edited = b.block_id in draft.edits;
        return `
        <li class="block-option ${edited ? "edited" : ""}" data-block-id="${escapeHtml(b.block_id)}">
          <label title="${escapeHtml(provenanceTitle(b))}">
            <input type="checkbox" ${picked ? "checked" : ""}/>
            <span class="block-text">${escapeHtml(b.text)}</span>
          </label>
          ${
            picked
              ? `<textarea class="block-edit" data-block-id="${escapeHtml(b.block_id)}">${escapeHtml(text)}</textarea>`
              : ""
          }
          ${edited ? `<span class="edited-flag">edited</span>` : ""}
        </li>`;
      })
      .join("");
    this.root.innerHTML = `
      <section class="block-picker">
        <h2>blocks for: ${escapeHtml(label)} (${this.currentLabelIndex + 1}/${this.view.chosen_labels.length})</h2>
        <div class="error-banner" style="display:none"></div>
        <ul class="block-list">${items}</ul>
        ${hasMore(blocks, draft.page, PAGE_SIZE) ? '<button id="more-blocks">more blocks</button>' : ""}
        <button id="confirm-blocks">Confirm blocks</button>
        <button id="skip-label">Keep defaults</button>
      </section>`;

    for (const li of this.root.querySelectorAll<HTMLElement>(".block-option")) {
      const id = li.dataset.blockId!;
      li.querySelector("input")!.addEventListener("change", () => {
        draft.selected = toggleItem(draft.selected, id);
        if (!draft.selected.includes(id)) delete draft.edits[id];
        this.renderBlocks();
      });
    }
    for (const area of this.root.querySelectorAll<HTMLTextAreaElement>(".block-edit")) {
      const id = area.dataset.blockId!;
      const original = blocks.find((b) => b.block_id === id)!.text;
      area.addEventListener("input", () => {
        // optimistic: edits live locally until the blocks are confirmed
        setEdit(draft, id, area.value, original);
      });
    }
    this.root.querySelector("#more-blocks")?.addEventListener("click", () => {
      draft.page += 1;
      this.renderBlocks();
    });
    this.root.querySelector("#confirm-blocks")!.addEventListener("click", () => {
      const problem = validateBlockSelection(draft.selected, draft.edits);
      if (problem) {
        this.setError(problem); // EmptySection surfaced before synthesize
        return;
      }
      void this.guarded(async () => {
        this.view = await this.client.putBlocks(this.sessionId, label, draft.selected, draft.edits);
        await this.advanceBlockScreen();
      });
    });
    this.root.querySelector("#skip-label")!.addEventListener("click", () => {
      void this.guarded(() => this.advanceBlockScreen());
    });
  }

  private async advanceBlockScreen(): Promise<void> {
    if (this.currentLabelIndex + 1 < this.view.chosen_labels.length) {
      this.currentLabelIndex += 1;
      this.renderBlocks();
      return;
    }
    const out = await this.client.synthesize(this.sessionId);
    this.article = out.article;
    this.draftText = out.markdown;
    this.view.stage = out.stage;
    this.renderDraft();
  }

  // ---- screen 3: draft editor ------------------------------------------

  renderDraft(): void {
    this.root.innerHTML = `
      <section class="draft-editor">
        <h2>final draft</h2>
        <div class="error-banner" style="display:none"></div>
        <textarea id="draft-text">${escapeHtml(this.draftText)}</textarea>
        <button id="save-draft">Save draft</button>
        <button id="retry-save" style="display:none">Retry save</button>
        <button id="export-md">Export markdown</button>
        <button id="export-json">Export JSON</button>
        <span id="save-state"></span>
      </section>`;

    const textarea = this.root.querySelector<HTMLTextAreaElement>("#draft-text")!;
    textarea.addEventListener("input", () => {
      this.draftText = textarea.value;
    });
    const retryButton = this.root.querySelector<HTMLButtonElement>("#retry-save")!;
    const saveState = this.root.querySelector<HTMLElement>("#save-state")!;

    const save = async () => {
      this.pendingSave = this.draftText;
      try {
        this.view = await this.client.putDraft(this.sessionId, this.pendingSave);
        this.pendingSave = null;
        retryButton.style.display = "none";
        saveState.textContent = "saved";
      } catch (err) {
        if (err instanceof ApiError && err.code === "network_error") {
          // text stays local; offer a retry instead of losing it
          retryButton.style.display = "inline";
          saveState.textContent = "save failed, draft kept locally";
        } else if (err instanceof ApiError && err.status === 409) {
          this.renderRerunBanner(err.message);
        } else {
          this.setError(String(err));
        }
      }
    };
    this.root.querySelector("#save-draft")!.addEventListener("click", () => void save());
    retryButton.addEventListener("click", () => void save());
    this.root.querySelector("#export-md")!.addEventListener("click", () => {
      void this.guarded(async () => {
        const md = await this.client.exportMarkdown(this.sessionId);
        this.onDownload("synthesis.md", md);
      });
    });
    this.root.querySelector("#export-json")!.addEventListener("click", () => {
      void this.guarded(async () => {
        const payload = await this.client.exportJson(this.sessionId);
        this.onDownload("synthesis.json", JSON.stringify(payload, null, 2));
      });
    });
  }
}

function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
