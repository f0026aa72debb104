// Wire types served by the reading API (snake_case matches the JSON).

export type LinkLabel = "entailment" | "contradiction";
export type Polarity = "supported" | "contradicted" | "mixed";

export interface ClusterSummary {
  cluster_id: string;
  story_title: string;
  article_count: number;
}

export interface ArticleMeta {
  article_id: string;
  url: string;
  venue: string;
  title: string;
  sentence_count: number;
}

export interface EvidenceSnippet {
  label: LinkLabel;
  confidence: number;
  source_article_id: string;
  source_venue: string;
  source_title: string;
  source_url: string;
  snippet_text: string;
  source_sentence_index: number;
}

export interface Highlight {
  sentence_index: number;
  span_start: number;
  span_end: number;
  polarity: Polarity;
  evidence: EvidenceSnippet[];
}

export interface AnnotatedArticle {
  article_id: string;
  url: string;
  venue: string;
  title: string;
  body: string;
  highlights: Highlight[];
}
