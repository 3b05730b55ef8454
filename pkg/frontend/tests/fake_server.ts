// In-memory /v1 backend mirroring the service contract: same routes,
// same response shapes, same structured error bodies and status codes.

import type { ArticleInfo, BlockInfo, LabelInfo, SectionInfo, SessionView } from "../src/types.js";

interface Session {
  view: SessionView;
  blocks: Record<string, BlockInfo[]>;
  article: ArticleInfo | null;
}

function errorBody(code: string, message: string): unknown {
  return { code, message, detail: null };
}

export const FIXTURE_LABELS: LabelInfo[] = [
  { surface: "finish line", tokens: ["finish", "line"], score: 2.9, tf: 21 },
  { surface: "race route", tokens: ["race", "route"], score: 2.8, tf: 18 },
  { surface: "weather forecast", tokens: ["weather", "forecast"], score: 2.7, tf: 22 },
];

export function fixtureBlocks(label: string): BlockInfo[] {
  const slug = label.replace(/\s+/g, "-");
  return Array.from({ length: 7 }, (_, i) => ({
    block_id: `a${i + 1}:${i}`,
    text: `${label} source text ${i} with enough words to render`,
    ws: 0.5 / (i + 1),
    mmr_rank: i,
    article_id: `a${i + 1}`,
    sentence_range: [i, i + 2] as [number, number],
    published_at: 1700000000 + i * 1000,
    // make ids unique per label so cross-label confusion is visible
  })).map((b, i) => ({ ...b, block_id: `${slug}-${b.block_id}`, article_id: `${slug}-a${i + 1}` }));
}

export class FakeBackend {
  sessions = new Map<string, Session>();
  requests: { method: string; path: string }[] = [];
  failPutDraftTimes = 0; // simulate transport failures on draft saves
  nextId = 1;

  createSession(topicName: string): string {
    const id = `fake-${this.nextId++}`;
    const blocks: Record<string, BlockInfo[]> = {};
    for (const l of FIXTURE_LABELS) blocks[l.surface] = fixtureBlocks(l.surface);
    this.sessions.set(id, {
      view: {
        session_id: id,
        topic_name: topicName,
        stage: "LABELS_READY",
        labels: FIXTURE_LABELS,
        chosen_labels: [],
        chosen_blocks: {},
        edits: {},
        final_draft: null,
        created_at: 1,
        updated_at: 1,
      },
      blocks,
      article: null,
    });
    return id;
  }

  private synthesize(s: Session): ArticleInfo {
    const chosen =
      s.view.chosen_labels.length > 0
        ? s.view.chosen_labels
        : s.view.labels.slice(0, 2).map((l) => l.surface);
    const sections: SectionInfo[] = chosen.map((surface) => {
      const label = s.view.labels.find((l) => l.surface === surface)!;
      const pickedIds = s.view.chosen_blocks[surface] ?? s.blocks[surface].slice(0, 2).map((b) => b.block_id);
      const edits = s.view.edits[surface] ?? {};
      const paragraphs = pickedIds.map((id) => {
        const block = s.blocks[surface].find((b) => b.block_id === id)!;
        const edit = edits[id];
        return {
          text: edit ?? block.text,
          article_id: block.article_id,
          sentence_range: block.sentence_range,
          block_id: id,
          edited: edit !== undefined,
        };
      });
      return {
        label: surface,
        label_tokens: label.tokens,
        score: label.score,
        paragraphs,
        blocks: pickedIds.map((id, i) => ({ block_id: id, ws: 0.1, mmr_rank: i })),
      };
    });
    const wordCount = sections
      .flatMap((sec) => sec.paragraphs)
      .reduce((acc, p) => acc + p.text.split(/\s+/).length, 0);
    return { topic_name: s.view.topic_name, word_count: wordCount, sections };
  }

  private markdownOf(article: ArticleInfo): string {
    const lines = [`# ${article.topic_name}`, ""];
    for (const sec of article.sections) {
      if (sec.label) lines.push(`## ${sec.label}`, "");
      for (const p of sec.paragraphs) lines.push(p.text, "");
    }
    return lines.join("\n").trimEnd() + "\n";
  }

  handle(method: string, path: string, body: unknown): { status: number; payload: unknown; raw?: string } {
    this.requests.push({ method, path });
    const url = new URL(path, "http://fake");
    const parts = url.pathname.split("/").filter(Boolean); // ["v1", "sessions", ...]

    if (method === "POST" && url.pathname === "/v1/sessions") {
      const req = body as { topic_name: string };
      const id = this.createSession(req.topic_name);
      const s = this.sessions.get(id)!;
      return {
        status: 200,
        payload: { session_id: id, stage: s.view.stage, labels: s.view.labels },
      };
    }

    const sid = parts[2];
    const s = this.sessions.get(sid ?? "");
    if (!s) return { status: 404, payload: errorBody("session_not_found", `no such session: ${sid}`) };

    if (method === "GET" && parts.length === 3) {
      return { status: 200, payload: s.view };
    }

    if (method === "GET" && parts[3] === "labels" && parts[5] === "blocks") {
      const label = decodeURIComponent(parts[4]);
      if (!s.blocks[label]) return { status: 404, payload: errorBody("unknown_label", `unknown label: ${label}`) };
      return { status: 200, payload: { label, blocks: s.blocks[label] } };
    }

    if (method === "PUT" && parts[3] === "labels" && parts.length === 4) {
      const req = body as { labels: string[] };
      const known = new Set(s.view.labels.map((l) => l.surface));
      const seen = new Set<string>();
      for (const surface of req.labels) {
        if (!known.has(surface))
          return { status: 422, payload: errorBody("unknown_label", `unknown label: '${surface}'`) };
        if (seen.has(surface))
          return { status: 422, payload: errorBody("duplicate_label", `duplicate label: '${surface}'`) };
        seen.add(surface);
      }
      s.view.chosen_labels = [...req.labels];
      if (s.view.stage === "LABELS_READY") s.view.stage = "BLOCKS_READY";
      return { status: 200, payload: s.view };
    }

    if (method === "PUT" && parts[3] === "labels" && parts[5] === "blocks") {
      const label = decodeURIComponent(parts[4]);
      const req = body as { block_ids: string[]; edits?: Record<string, string> };
      const knownIds = new Set(Object.values(s.blocks).flat().map((b) => b.block_id));
      for (const id of req.block_ids) {
        if (!knownIds.has(id))
          return { status: 422, payload: errorBody("unknown_block", `unknown block: '${id}'`) };
      }
      for (const id of Object.keys(req.edits ?? {})) {
        if (!req.block_ids.includes(id))
          return {
            status: 422,
            payload: errorBody("edit_without_selection", `edit references unchosen block: '${id}'`),
          };
      }
      s.view.chosen_blocks[label] = [...req.block_ids];
      if (req.edits && Object.keys(req.edits).length > 0) s.view.edits[label] = { ...req.edits };
      else delete s.view.edits[label];
      if (s.view.stage === "LABELS_READY") s.view.stage = "BLOCKS_READY";
      return { status: 200, payload: s.view };
    }

    if (method === "POST" && parts[3] === "synthesize") {
      s.article = this.synthesize(s);
      const markdown = this.markdownOf(s.article);
      s.view.final_draft = markdown;
      s.view.stage = "SYNTHESIZED";
      return {
        status: 200,
        payload: { session_id: sid, stage: s.view.stage, article: s.article, markdown },
      };
    }

    if (method === "PUT" && parts[3] === "draft") {
      if (s.view.stage !== "SYNTHESIZED")
        return { status: 409, payload: errorBody("not_synthesized", "synthesize must run before editing the draft") };
      s.view.final_draft = (body as { text: string }).text;
      return { status: 200, payload: s.view };
    }

    if (method === "GET" && parts[3] === "export") {
      if (!s.article)
        return { status: 409, payload: errorBody("stage_violation", "nothing to export") };
      const format = url.searchParams.get("format") ?? "md";
      if (format === "md") return { status: 200, payload: null, raw: s.view.final_draft ?? "" };
      return {
        status: 200,
        payload: { topic_name: s.view.topic_name, draft: s.view.final_draft, article: s.article },
      };
    }

    return { status: 404, payload: errorBody("not_found", `no route: ${method} ${path}`) };
  }
}

export function fetchOf(backend: FakeBackend): (input: string, init?: RequestInit) => Promise<Response> {
  return async (input, init) => {
    const method = init?.method ?? "GET";
    if (backend.failPutDraftTimes > 0 && method === "PUT" && input.includes("/draft")) {
      backend.failPutDraftTimes -= 1;
      throw new TypeError("fetch failed (simulated)");
    }
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    const result = backend.handle(method, input, body);
    if (result.raw !== undefined) {
      return new Response(result.raw, { status: result.status, headers: { "content-type": "text/markdown" } });
    }
    return new Response(result.payload === null ? "" : JSON.stringify(result.payload), {
      status: result.status,
      headers: { "content-type": "application/json" },
    });
  };
}
