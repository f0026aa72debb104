import { ReaderApi } from "./api.js";
import { closeOverlay, installOverlayDismissal, openEvidenceOverlay } from "./overlay.js";
import { renderArticle, renderArticleHeader } from "./render.js";
import type { EvidenceSnippet, Highlight } from "./types.js";

interface FocusRef {
  clusterId: string;
  articleId: string;
  scrollY: number;
}

export class ReaderApp {
  private api: ReaderApi;
  private root: HTMLElement;
  private history: FocusRef[] = [];
  private clusterId: string | null = null;
  private articleId: string | null = null;
  private requestCounter = 0;
  private pendingScrollTo: number | null = null;

  constructor(root: HTMLElement, baseUrl = "") {
    this.root = root;
    this.api = new ReaderApi(baseUrl);
    installOverlayDismissal();
    window.addEventListener("hashchange", () => this.route());
  }

  start(): Promise<void> {
    return this.route();
  }

  historyDepth(): number {
    return this.history.length;
  }

  currentFocus(): { clusterId: string | null; articleId: string | null } {
    return { clusterId: this.clusterId, articleId: this.articleId };
  }

  /** #/{cluster}/{article} deep links; no fragment shows the cluster list. */
  private async route(): Promise<void> {
    const match = window.location.hash.match(/^#\/([^/]+)\/([^/]+)$/);
    if (match) {
      await this.showArticle(decodeURIComponent(match[1]), decodeURIComponent(match[2]));
    } else {
      await this.showClusterList();
    }
  }

  private setFragment(clusterId: string, articleId: string): void {
    const fragment = `#/${encodeURIComponent(clusterId)}/${encodeURIComponent(articleId)}`;
    if (window.location.hash !== fragment) {
      // replace, not assign: reader history is the in-app back stack
      window.history.replaceState(null, "", fragment);
    }
  }

  private showLoading(): void {
    this.root.replaceChildren();
    const note = document.createElement("p");
    note.className = "loading-note";
    note.textContent = "analyzing the article...";
    this.root.appendChild(note);
  }

  private async showClusterList(): Promise<void> {
    const requestId = ++this.requestCounter;
    this.showLoading();
    const clusters = await this.api.fetchClusters();
    if (requestId !== this.requestCounter) return; // superseded
    this.root.replaceChildren();

    const heading = document.createElement("h1");
    heading.textContent = "Stories";
    const list = document.createElement("ul");
    list.className = "cluster-list";
    for (const cluster of clusters) {
      const item = document.createElement("li");
      const link = document.createElement("a");
      link.textContent = `${cluster.story_title} (${cluster.article_count} articles)`;
      link.href = "#";
      link.addEventListener("click", async (event) => {
        event.preventDefault();
        const articles = await this.api.fetchArticles(cluster.cluster_id);
        if (articles.length) {
          this.history = [];
          await this.showArticle(cluster.cluster_id, articles[0].article_id);
        }
      });
      item.appendChild(link);
      list.appendChild(item);
    }
    this.root.append(heading, list);
  }

  async showArticle(clusterId: string, articleId: string): Promise<void> {
    const requestId = ++this.requestCounter;
    closeOverlay();
    this.showLoading();
    const article = await this.api.fetchAnnotatedArticle(clusterId, articleId);
    if (requestId !== this.requestCounter) return; // superseded navigation

    this.clusterId = clusterId;
    this.articleId = articleId;
    this.setFragment(clusterId, articleId);
    this.root.replaceChildren();

    const nav = document.createElement("nav");
    nav.className = "reader-nav";
    if (this.history.length > 0) {
      const back = document.createElement("button");
      back.className = "back-button";
      back.textContent = "← back";
      back.addEventListener("click", () => void this.goBack());
      nav.appendChild(back);
    }
    this.root.appendChild(nav);

    this.root.appendChild(renderArticleHeader(article));
    const rendered = renderArticle(article, (highlight, span) =>
      this.openEvidence(highlight, span)
    );
    this.root.appendChild(rendered.root);

    if (this.pendingScrollTo !== null) {
      const target = rendered.highlightSpans.get(this.pendingScrollTo);
      target?.scrollIntoView({ block: "center" });
      this.pendingScrollTo = null;
    } else {
      window.scrollTo(0, 0);
    }
  }

  private openEvidence(highlight: Highlight, span: HTMLElement): void {
    openEvidenceOverlay(highlight, span, (snippet) => void this.navigateToSource(snippet));
  }

  /** Jump to the evidence article, remembering where we came from. */
  async navigateToSource(snippet: EvidenceSnippet): Promise<void> {
    if (!this.clusterId || !this.articleId) return;
    this.history.push({
      clusterId: this.clusterId,
      articleId: this.articleId,
      scrollY: window.scrollY,
    });
    closeOverlay();
    this.pendingScrollTo = snippet.source_sentence_index;
    await this.showArticle(this.clusterId, snippet.source_article_id);
  }

  async goBack(): Promise<void> {
    const prior = this.history.pop();
    if (!prior) return;
    this.pendingScrollTo = null;
    await this.showArticle(prior.clusterId, prior.articleId);
    window.scrollTo(0, prior.scrollY);
  }
}
