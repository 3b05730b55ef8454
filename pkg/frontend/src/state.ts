// Pure selection/ordering logic behind the three interaction screens.
// Everything here is server-reconstructible: the authoritative state is
// always the session on the server, these helpers only shape pending
// edits before they are confirmed.

import type { BlockInfo, SessionView } from "./types.js";

export function toggleItem(selected: readonly string[], item: string): string[] {
  return selected.includes(item) ? selected.filter((s) => s !== item) : [...selected, item];
}

export function moveItem(selected: readonly string[], from: number, to: number): string[] {
  const out = [...selected];
  if (from < 0 || from >= out.length || to < 0 || to >= out.length) return out;
  const [item] = out.splice(from, 1);
  out.splice(to, 0, item);
  return out;
}

export function validateLabelSelection(selected: readonly string[]): string | null {
  if (selected.length === 0) return "select at least one subtopic";
  return null;
}

export function validateBlockSelection(
  selected: readonly string[],
  edits: Record<string, string>,
): string | null {
  if (selected.length === 0) return "a subtopic needs at least one text block";
  for (const id of Object.keys(edits)) {
    if (!selected.includes(id)) return `edit refers to an unselected block (${id})`;
  }
  return null;
}

export function pageOf<T>(items: readonly T[], page: number, pageSize: number): T[] {
  return items.slice(0, (page + 1) * pageSize);
}

export function hasMore<T>(items: readonly T[], page: number, pageSize: number): boolean {
  return items.length > (page + 1) * pageSize;
}

export function provenanceTitle(block: BlockInfo): string {
  const [start, end] = block.sentence_range;
  return `${block.article_id} sentences [${start}, ${end}) ws=${block.ws.toFixed(4)}`;
}

// Per-label working copy of the block picker.
export interface BlockDraft {
  selected: string[];
  edits: Record<string, string>;
  page: number;
}

export function blockDraftFromSession(view: SessionView, label: string): BlockDraft {
  return {
    selected: [...(view.chosen_blocks[label] ?? [])],
    edits: { ...(view.edits[label] ?? {}) },
    page: 0,
  };
}

export function setEdit(draft: BlockDraft, blockId: string, text: string, original: string): void {
  // storing an edit identical to the source text would only add noise
  if (text === original) {
    delete draft.edits[blockId];
  } else {
    draft.edits[blockId] = text;
  }
}

export function stageAfter(view: SessionView): "labels" | "blocks" | "draft" {
  if (view.stage === "SYNTHESIZED") return "draft";
  if (view.stage === "BLOCKS_READY") return "blocks";
  return "labels";
}
