import http.server
import json
import socketserver
import threading
from datetime import datetime, timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from claimlink.corpus import (
    ArticleCluster,
    Manifest,
    fetch_cluster,
    segment_sentences,
)
from claimlink.errors import AllArticlesFailedError, ManifestError
from claimlink.store import ClusterDocument, ClusterStore


# --- segmentation ------------------------------------------------------------


def test_two_sentence_split_spans():
    body = "It rained. We stayed home."
    sents = segment_sentences(body)
    assert [(s.span_start, s.span_end) for s in sents] == [(0, 10), (11, 26)]
    assert [s.text for s in sents] == ["It rained.", "We stayed home."]


def test_no_terminal_punctuation_single_sentence():
    sents = segment_sentences("Hello world")
    assert len(sents) == 1
    assert (sents[0].span_start, sents[0].span_end) == (0, 11)


def test_abbreviation_protected():
    sents = segment_sentences("Mr. Smith arrived. He spoke.")
    assert [s.text for s in sents] == ["Mr. Smith arrived.", "He spoke."]


def test_country_abbreviation_protected():
    sents = segment_sentences("Exports to the U.S. rose sharply. Imports fell.")
    assert len(sents) == 2
    assert sents[0].text == "Exports to the U.S. rose sharply."


def test_initials_protected():
    sents = segment_sentences("John F. Kennedy spoke. The crowd cheered.")
    assert [s.text for s in sents] == ["John F. Kennedy spoke.", "The crowd cheered."]


def test_decimal_numbers_not_split():
    sents = segment_sentences("Costs rose 3.5 percent. Wages stalled.")
    assert [s.text for s in sents] == ["Costs rose 3.5 percent.", "Wages stalled."]


def test_question_and_exclamation_boundaries():
    sents = segment_sentences("Will it reopen? Nobody knows! Ask again later.")
    assert [s.text for s in sents] == [
        "Will it reopen?",
        "Nobody knows!",
        "Ask again later.",
    ]


def test_closing_quote_stays_with_sentence():
    body = 'He said "Go home." They left quickly.'
    sents = segment_sentences(body)
    assert sents[0].text == 'He said "Go home."'
    assert sents[1].text == "They left quickly."


def test_paragraph_break_is_hard_boundary():
    body = "A headline without punctuation\n\nThe story begins here."
    sents = segment_sentences(body)
    assert [s.text for s in sents] == [
        "A headline without punctuation",
        "The story begins here.",
    ]


def test_segmentation_idempotent_per_sentence():
    body = "The bridge closed. Ferries ran all night. Crews worked fast."
    for s in segment_sentences(body):
        again = segment_sentences(s.text)
        assert len(again) == 1
        assert again[0].text == s.text


_SENT_WORDS = st.lists(
    st.sampled_from(["bridge", "ferry", "closed", "crews", "worked", "night", "fast"]),
    min_size=1,
    max_size=6,
)


@given(st.lists(_SENT_WORDS, min_size=1, max_size=5))
def test_roundtrip_spans_property(word_lists):
    body = " ".join(" ".join(ws).capitalize() + "." for ws in word_lists)
    for s in segment_sentences(body):
        assert body[s.span_start : s.span_end] == s.text
        assert s.text.strip()


# --- manifest + ingestion ----------------------------------------------------


def test_manifest_missing_title(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"urls": ["http://x"]}))
    with pytest.raises(ManifestError):
        Manifest.load(p)


def test_manifest_no_sources(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"story_title": "t"}))
    with pytest.raises(ManifestError):
        Manifest.load(p)


def test_manifest_not_json(tmp_path):
    p = tmp_path / "m.json"
    p.write_text("{nope")
    with pytest.raises(ManifestError):
        Manifest.load(p)


def test_single_local_file_cluster(story_manifest):
    manifest = Manifest(
        story_title="One article",
        html_files=[story_manifest.parent / "alpha-wire.html"],
    )
    cluster, failures = fetch_cluster(manifest)
    assert failures == []
    assert len(cluster.articles) == 1
    article = cluster.articles[0]
    assert article.venue == "alpha-wire"
    assert article.title == "Cargo ship slams harbor bridge, closing key crossing"
    assert len(article.sentences) == 17
    cluster.validate()


def test_story_manifest_ingests_three_articles(story_manifest):
    cluster, failures = fetch_cluster(story_manifest)
    assert failures == []
    assert [a.article_id for a in cluster.articles] == ["a000", "a001", "a002"]
    assert cluster.cluster_id == "harbor-bridge"
    assert cluster.created_at == datetime(2025, 3, 18, 9, 30, tzinfo=timezone.utc)


class _FixtureHandler(http.server.BaseHTTPRequestHandler):
    pages: dict = {}

    def do_GET(self):
        page = self.pages.get(self.path)
        if page is None:
            self.send_response(404)
            self.end_headers()
            self.wfile.write(b"not found")
            return
        body = page.encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "text/html; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture
def fixture_server():
    handler = type("Handler", (_FixtureHandler,), {"pages": {}})
    server = socketserver.ThreadingTCPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield server, handler.pages
    finally:
        server.shutdown()
        server.server_close()


def _page(i: int) -> str:
    return (
        f"<html><head><title>Page {i}</title></head><body>"
        f"<p>Article number {i} reports on the harbor closure today. "
        f"Officials issued statement number {i} about repairs.</p>"
        "</body></html>"
    )


def test_fetch_with_one_failing_url(fixture_server, tmp_path):
    server, pages = fixture_server
    port = server.server_address[1]
    pages["/ok1"] = _page(1)
    pages["/ok2"] = _page(2)
    manifest = Manifest(
        story_title="Mixed fetch",
        urls=[
            f"http://127.0.0.1:{port}/ok1",
            f"http://127.0.0.1:{port}/missing",
            f"http://127.0.0.1:{port}/ok2",
        ],
    )
    cluster, failures = fetch_cluster(manifest)
    assert len(cluster.articles) == 2
    assert len(failures) == 1
    assert failures[0].url.endswith("/missing")
    assert "404" in failures[0].reason


def test_fetch_fifty_urls(fixture_server):
    server, pages = fixture_server
    port = server.server_address[1]
    urls = []
    for i in range(50):
        pages[f"/story/{i}"] = _page(i)
        urls.append(f"http://127.0.0.1:{port}/story/{i}")
    cluster, failures = fetch_cluster(Manifest(story_title="Big story", urls=urls))
    assert failures == []
    assert len(cluster.articles) == 50
    # source order preserved regardless of fetch completion order
    assert [a.url for a in cluster.articles] == urls


def test_all_failed_raises(fixture_server):
    server, pages = fixture_server
    port = server.server_address[1]
    manifest = Manifest(
        story_title="Nothing works",
        urls=[f"http://127.0.0.1:{port}/gone1", f"http://127.0.0.1:{port}/gone2"],
    )
    with pytest.raises(AllArticlesFailedError) as exc:
        fetch_cluster(manifest)
    assert len(exc.value.failures) == 2


def test_unextractable_article_dropped_and_recorded(fixture_server):
    server, pages = fixture_server
    port = server.server_address[1]
    pages["/good"] = _page(1)
    pages["/navonly"] = "<html><body><nav><a href='/'>x</a></nav></body></html>"
    cluster, failures = fetch_cluster(
        Manifest(
            story_title="Partial",
            urls=[f"http://127.0.0.1:{port}/good", f"http://127.0.0.1:{port}/navonly"],
        )
    )
    assert len(cluster.articles) == 1
    assert len(failures) == 1
    assert "paragraph" in failures[0].reason


# --- persistence -------------------------------------------------------------


def test_cluster_roundtrip(tmp_path, story_manifest):
    cluster, failures = fetch_cluster(story_manifest)
    store = ClusterStore(tmp_path)
    store.save(ClusterDocument(cluster=cluster, fetch_failures=failures))
    loaded = store.load(cluster.cluster_id)
    assert loaded.cluster == cluster
    assert loaded.claims is None

    # second save replaces atomically and loads identically
    store.save(loaded)
    assert store.load(cluster.cluster_id).cluster == cluster


def test_store_listing(tmp_path, story_manifest):
    cluster, _ = fetch_cluster(story_manifest)
    store = ClusterStore(tmp_path)
    assert store.list_clusters() == []
    store.save(ClusterDocument(cluster=cluster))
    assert store.list_clusters() == [
        {
            "cluster_id": "harbor-bridge",
            "story_title": "Cargo Ship Strikes Harbor Bridge",
            "article_count": 3,
        }
    ]


def test_cluster_validation_rejects_duplicate_article_ids(story_manifest):
    cluster, _ = fetch_cluster(story_manifest)
    cluster.articles[1].article_id = cluster.articles[0].article_id
    with pytest.raises(ValueError):
        cluster.validate()


def test_cluster_validation_rejects_span_mismatch(story_manifest):
    cluster, _ = fetch_cluster(story_manifest)
    bad = cluster.articles[0].sentences[0]
    cluster.articles[0].sentences[0] = type(bad)(
        bad.sentence_index, bad.span_start, bad.span_end, "tampered text"
    )
    with pytest.raises(ValueError):
        cluster.validate()


def test_empty_cluster_rejected():
    cluster = ArticleCluster(
        cluster_id="x",
        story_title="t",
        articles=[],
        created_at=datetime.now(timezone.utc),
    )
    with pytest.raises(ValueError):
        cluster.validate()
