import type { AnnotatedArticle, ArticleMeta, ClusterSummary } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  if (!resp.ok) {
    throw new ApiError(resp.status, `GET ${url} failed: ${resp.status}`);
  }
  return (await resp.json()) as T;
}

export class ReaderApi {
  constructor(private baseUrl: string = "") {}

  fetchClusters(): Promise<ClusterSummary[]> {
    return getJson(`${this.baseUrl}/api/clusters`);
  }

  fetchArticles(clusterId: string): Promise<ArticleMeta[]> {
    return getJson(
      `${this.baseUrl}/api/clusters/${encodeURIComponent(clusterId)}/articles`
    );
  }

  fetchAnnotatedArticle(
    clusterId: string,
    articleId: string
  ): Promise<AnnotatedArticle> {
    return getJson(
      `${this.baseUrl}/api/clusters/${encodeURIComponent(clusterId)}` +
        `/articles/${encodeURIComponent(articleId)}`
    );
  }
}
