import type { AnnotatedArticle, Highlight, Polarity } from "./types.js";

// supported reads green; contradicted and mixed both read red, mixed adds a
// dual badge (drawn in CSS so stripping markup recovers the body verbatim)
const POLARITY_CLASS: Record<Polarity, string> = {
  supported: "hl hl-supported",
  contradicted: "hl hl-contradicted",
  mixed: "hl hl-mixed",
};

export interface RenderedArticle {
  root: HTMLElement;
  highlightSpans: Map<number, HTMLElement>; // sentence_index -> span
}

function validHighlights(article: AnnotatedArticle): Highlight[] {
  const usable: Highlight[] = [];
  let cursor = 0;
  const sorted = [...article.highlights].sort((a, b) => a.span_start - b.span_start);
  for (const h of sorted) {
    if (
      h.span_start < cursor ||
      h.span_end <= h.span_start ||
      h.span_end > article.body.length
    ) {
      console.warn(
        `skipping highlight with bad span [${h.span_start}, ${h.span_end})`,
        h.sentence_index
      );
      continue;
    }
    usable.push(h);
    cursor = h.span_end;
  }
  return usable;
}

/**
 * Build the focus-article DOM: plain text nodes for undecorated stretches,
 * one <span> per highlighted sentence. The concatenated text content is
 * exactly the annotation body.
 */
export function renderArticle(
  article: AnnotatedArticle,
  onHighlightClick: (highlight: Highlight, span: HTMLElement) => void
): RenderedArticle {
  const root = document.createElement("div");
  root.className = "article-body";

  const spans = new Map<number, HTMLElement>();
  let cursor = 0;
  for (const highlight of validHighlights(article)) {
    if (highlight.span_start > cursor) {
      root.appendChild(
        document.createTextNode(article.body.slice(cursor, highlight.span_start))
      );
    }
    const span = document.createElement("span");
    span.className = POLARITY_CLASS[highlight.polarity];
    span.dataset.sentenceIndex = String(highlight.sentence_index);
    span.dataset.polarity = highlight.polarity;
    span.textContent = article.body.slice(highlight.span_start, highlight.span_end);
    span.addEventListener("click", (event) => {
      event.stopPropagation();
      onHighlightClick(highlight, span);
    });
    root.appendChild(span);
    spans.set(highlight.sentence_index, span);
    cursor = highlight.span_end;
  }
  if (cursor < article.body.length) {
    root.appendChild(document.createTextNode(article.body.slice(cursor)));
  }
  return { root, highlightSpans: spans };
}

export function renderArticleHeader(article: AnnotatedArticle): HTMLElement {
  const header = document.createElement("header");
  header.className = "article-header";
  const title = document.createElement("h1");
  title.textContent = article.title;
  const venue = document.createElement("p");
  venue.className = "article-venue";
  venue.textContent = article.venue;
  header.append(title, venue);
  return header;
}
