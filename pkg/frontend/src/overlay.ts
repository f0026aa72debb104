import type { EvidenceSnippet, Highlight } from "./types.js";

export interface OverlayHandle {
  element: HTMLElement;
  close: () => void;
}

let current: OverlayHandle | null = null;

export function closeOverlay(): void {
  if (current) {
    current.element.remove();
    current = null;
  }
}

export function openOverlay(): OverlayHandle | null {
  return current;
}

/**
 * Evidence panel for one highlighted sentence: a scrollable list of snippet
 * cards colored by label, sorted by confidence, each naming its venue.
 * Only one overlay exists at a time; clicking outside closes it.
 */
export function openEvidenceOverlay(
  highlight: Highlight,
  anchor: HTMLElement,
  onSnippetClick: (snippet: EvidenceSnippet) => void
): OverlayHandle {
  closeOverlay();

  const panel = document.createElement("div");
  panel.className = "evidence-overlay";
  panel.addEventListener("click", (event) => event.stopPropagation());

  const heading = document.createElement("div");
  heading.className = "evidence-heading";
  const supporting = highlight.evidence.filter((e) => e.label === "entailment").length;
  const contradicting = highlight.evidence.length - supporting;
  heading.textContent = `${supporting} supporting · ${contradicting} contradicting`;
  panel.appendChild(heading);

  const list = document.createElement("ul");
  list.className = "evidence-list";
  const sorted = [...highlight.evidence].sort((a, b) => b.confidence - a.confidence);
  for (const snippet of sorted) {
    const card = document.createElement("li");
    card.className =
      snippet.label === "entailment" ? "evidence-card card-support" : "evidence-card card-contradict";
    card.dataset.sourceArticle = snippet.source_article_id;

    const source = document.createElement("div");
    source.className = "evidence-source";
    source.textContent = `${snippet.source_venue} — ${snippet.source_title}`;

    const text = document.createElement("blockquote");
    text.className = "evidence-text";
    text.textContent = snippet.snippet_text;

    const confidence = document.createElement("div");
    confidence.className = "evidence-confidence";
    confidence.textContent = `confidence ${(snippet.confidence * 100).toFixed(0)}%`;

    card.append(source, text, confidence);
    card.addEventListener("click", (event) => {
      event.stopPropagation();
      onSnippetClick(snippet);
    });
    list.appendChild(card);
  }
  panel.appendChild(list);

  anchor.insertAdjacentElement("afterend", panel);
  const handle: OverlayHandle = {
    element: panel,
    close: closeOverlay,
  };
  current = handle;
  return handle;
}

// a click anywhere outside the panel dismisses it
export function installOverlayDismissal(root: Document = document): void {
  root.addEventListener("click", () => closeOverlay());
}
