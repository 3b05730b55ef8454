// Payload shapes of the /v1 session API.

export type Stage = "LABELS_READY" | "BLOCKS_READY" | "SYNTHESIZED";

export interface LabelInfo {
  surface: string;
  tokens: string[];
  score: number;
  tf: number;
}

export interface BlockInfo {
  block_id: string;
  text: string;
  ws: number;
  mmr_rank: number;
  article_id: string;
  sentence_range: [number, number];
  published_at: number;
}

export interface SessionView {
  session_id: string;
  topic_name: string;
  stage: Stage;
  labels: LabelInfo[];
  chosen_labels: string[];
  chosen_blocks: Record<string, string[]>;
  edits: Record<string, Record<string, string>>;
  final_draft: string | null;
  created_at: number;
  updated_at: number;
}

export interface ParagraphInfo {
  text: string;
  article_id: string;
  sentence_range: [number, number];
  block_id: string;
  edited: boolean;
}

export interface SectionInfo {
  label: string | null;
  label_tokens: string[] | null;
  score: number | null;
  paragraphs: ParagraphInfo[];
  blocks: { block_id: string; ws: number; mmr_rank: number }[];
}

export interface ArticleInfo {
  topic_name: string;
  word_count: number;
  sections: SectionInfo[];
}

export interface SynthesizeResponse {
  session_id: string;
  stage: Stage;
  article: ArticleInfo;
  markdown: string;
}

export interface CreateSessionResponse {
  session_id: string;
  stage: Stage;
  labels: LabelInfo[];
}

export interface ExportJson {
  topic_name: string;
  draft: string | null;
  article: ArticleInfo;
}

export interface ErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}
