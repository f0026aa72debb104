// @vitest-environment jsdom
import { describe, expect, it, vi } from "vitest";

import { ApiError, ReaderApi } from "../src/api";

function stubFetch(status: number, data: unknown) {
  const calls: string[] = [];
  globalThis.fetch = vi.fn(async (input: RequestInfo | URL) => {
    calls.push(String(input));
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => data,
    } as Response;
  }) as typeof fetch;
  return calls;
}

describe("ReaderApi", () => {
  it("builds endpoint urls with the configured base", async () => {
    const calls = stubFetch(200, []);
    const api = new ReaderApi("http://srv:8100");
    await api.fetchClusters();
    await api.fetchArticles("harbor-bridge");
    await api.fetchAnnotatedArticle("harbor-bridge", "a000");
    expect(calls).toEqual([
      "http://srv:8100/api/clusters",
      "http://srv:8100/api/clusters/harbor-bridge/articles",
      "http://srv:8100/api/clusters/harbor-bridge/articles/a000",
    ]);
  });

  it("percent-encodes path segments", async () => {
    const calls = stubFetch(200, []);
    await new ReaderApi().fetchArticles("odd cluster");
    expect(calls[0]).toBe("/api/clusters/odd%20cluster/articles");
  });

  it("raises ApiError with the status on non-2xx", async () => {
    stubFetch(404, { detail: "unknown cluster" });
    const api = new ReaderApi();
    await expect(api.fetchArticles("nope")).rejects.toBeInstanceOf(ApiError);
    await expect(api.fetchArticles("nope")).rejects.toMatchObject({ status: 404 });
  });
});
