import { describe, expect, it } from "vitest";

import {
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
} from "../src/state.js";
import type { BlockInfo, SessionView } from "../src/types.js";

describe("selection toggling", () => {
  it("adds unknown items at the end", () => {
    expect(toggleItem(["a"], "b")).toEqual(["a", "b"]);
  });

  it("removes present items keeping order", () => {
    expect(toggleItem(["a", "b", "c"], "b")).toEqual(["a", "c"]);
  });
});

describe("reordering", () => {
  it("moves an item to a new position", () => {
    expect(moveItem(["a", "b", "c"], 2, 0)).toEqual(["c", "a", "b"]);
    expect(moveItem(["a", "b", "c"], 0, 1)).toEqual(["b", "a", "c"]);
  });

  it("ignores out-of-range moves", () => {
    expect(moveItem(["a", "b"], 0, 5)).toEqual(["a", "b"]);
    expect(moveItem(["a", "b"], -1, 0)).toEqual(["a", "b"]);
  });
});

describe("validation", () => {
  it("rejects empty label selections", () => {
    expect(validateLabelSelection([])).toMatch(/at least one/);
    expect(validateLabelSelection(["x"])).toBeNull();
  });

  it("rejects empty block selections before synthesis", () => {
    expect(validateBlockSelection([], {})).toMatch(/at least one/);
  });

  it("rejects edits pointing at unselected blocks", () => {
    expect(validateBlockSelection(["a"], { b: "text" })).toMatch(/unselected/);
    expect(validateBlockSelection(["a"], { a: "text" })).toBeNull();
  });
});

describe("paging", () => {
  const items = Array.from({ length: 12 }, (_, i) => i);

  it("grows the visible prefix page by page", () => {
    expect(pageOf(items, 0, 5)).toEqual([0, 1, 2, 3, 4]);
    expect(pageOf(items, 1, 5)).toEqual([0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
  });

  it("reports whether more items remain", () => {
    expect(hasMore(items, 0, 5)).toBe(true);
    expect(hasMore(items, 2, 5)).toBe(false);
  });
});

const block: BlockInfo = {
  block_id: "a1:0",
  text: "original text",
  ws: 0.25,
  mmr_rank: 0,
  article_id: "a1",
  sentence_range: [0, 2],
  published_at: 5,
};

describe("block drafts", () => {
  const view: SessionView = {
    session_id: "s",
    topic_name: "t",
    stage: "BLOCKS_READY",
    labels: [],
    chosen_labels: ["l"],
    chosen_blocks: { l: ["a1:0"] },
    edits: { l: { "a1:0": "changed" } },
    final_draft: null,
    created_at: 0,
    updated_at: 0,
  };

  it("seeds from the server session", () => {
    const draft = blockDraftFromSession(view, "l");
    expect(draft.selected).toEqual(["a1:0"]);
    expect(draft.edits).toEqual({ "a1:0": "changed" });
  });

  it("drops edits identical to the source text", () => {
    const draft = blockDraftFromSession(view, "l");
    setEdit(draft, "a1:0", "original text", "original text");
    expect(draft.edits).toEqual({});
    setEdit(draft, "a1:0", "new words", "original text");
    expect(draft.edits).toEqual({ "a1:0": "new words" });
  });

  it("renders provenance tooltips from block metadata", () => {
    expect(provenanceTitle(block)).toBe("a1 sentences [0, 2) ws=0.2500");
  });
});

describe("stage routing", () => {
  const base: SessionView = {
    session_id: "s",
    topic_name: "t",
    stage: "LABELS_READY",
    labels: [],
    chosen_labels: [],
    chosen_blocks: {},
    edits: {},
    final_draft: null,
    created_at: 0,
    updated_at: 0,
  };

  it("routes each stage to its screen", () => {
    expect(stageAfter(base)).toBe("labels");
    expect(stageAfter({ ...base, stage: "BLOCKS_READY" })).toBe("blocks");
    expect(stageAfter({ ...base, stage: "SYNTHESIZED" })).toBe("draft");
  });
});
