import http.server
import json
import logging
import math
import os
import socketserver
import threading
import time

import numpy as np
import pytest

from claimlink.backends import (
    EchoCompletionBackend,
    HashEmbeddingBackend,
    HttpCompletionBackend,
    HttpEmbeddingBackend,
    HttpNliBackend,
    cosine_similarity,
    http_backend_call,
    stub_embed,
)
from claimlink.errors import (
    BackendHTTPError,
    BackendProtocolError,
    BackendTimeout,
)
from claimlink.claims import build_prompt
from claimlink.textnorm import content_tokens

from oracles import random_claims
import random


# --- cosine_similarity -------------------------------------------------------


def test_cosine_identical_vectors():
    v = np.array([1.0, 2.0, 3.0])
    assert cosine_similarity(v, v) == pytest.approx(1.0)


def test_cosine_orthogonal_unit_vectors():
    assert cosine_similarity(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0


def test_cosine_45_degrees():
    got = cosine_similarity(np.array([1.0, 0.0]), np.array([1.0, 1.0]))
    assert got == pytest.approx(math.sqrt(2) / 2, abs=1e-9)


def test_cosine_zero_vector_returns_zero(caplog):
    with caplog.at_level(logging.WARNING):
        got = cosine_similarity(np.zeros(4), np.array([1.0, 0.0, 0.0, 0.0]))
    assert got == 0.0
    assert any("zero vector" in r.message for r in caplog.records)


def test_cosine_dimension_mismatch():
    with pytest.raises(ValueError):
        cosine_similarity(np.ones(3), np.ones(4))


def test_cosine_symmetric_and_bounded():
    rng = np.random.default_rng(7)
    for _ in range(50):
        u, v = rng.normal(size=16), rng.normal(size=16)
        assert cosine_similarity(u, v) == cosine_similarity(v, u)
        assert abs(cosine_similarity(u, v)) <= 1 + 1e-12


# --- hashing stub embeddings ---------------------------------------------


def test_stub_embed_shape_and_normalization():
    vectors = stub_embed(["The bridge closed.", "Ferries ran."], dimension=256)
    assert vectors.shape == (2, 256)
    for row in vectors:
        assert np.linalg.norm(row) == pytest.approx(1.0, abs=1e-6)


def test_stub_embed_pure_function():
    texts = ["The bridge closed on Monday.", "Ferries ran all night."]
    a = stub_embed(texts)
    b = stub_embed(texts)
    assert np.array_equal(a, b)


def test_stub_embed_equal_token_multisets_identical():
    # stopword and inflection differences vanish after preprocessing
    first = "The crews repaired the piers."
    second = "crew repairs a pier"
    assert content_tokens(first) == content_tokens(second)
    a = stub_embed([first])[0]
    b = stub_embed([second])[0]
    assert cosine_similarity(a, b) == pytest.approx(1.0, abs=1e-9)


def test_stub_embed_no_content_tokens_is_zero_vector():
    v = stub_embed(["of the and"])[0]
    assert np.linalg.norm(v) == 0.0


def test_stub_embed_content_difference_lowers_cosine():
    # 200-sentence fixture: every content-word difference must show up
    rng = random.Random(41)
    claims = random_claims(rng, n_claims=200, n_articles=4)
    texts = [c.text for c in claims]
    vectors = stub_embed(texts)
    multisets = [tuple(sorted(content_tokens(t))) for t in texts]
    for i in range(0, 200, 7):
        for j in range(i + 1, min(i + 8, 200)):
            sim = cosine_similarity(vectors[i], vectors[j])
            if multisets[i] == multisets[j]:
                assert sim == pytest.approx(1.0, abs=1e-9)
            else:
                assert sim < 1.0 - 1e-9


def test_echo_backend_returns_final_sentence():
    prompt = build_prompt("The bridge closed for repairs.")
    assert EchoCompletionBackend().complete(prompt) == "The bridge closed for repairs."


# --- HTTP backends -----------------------------------------------------------


class _ScriptedHandler(http.server.BaseHTTPRequestHandler):
    state = {"flaky_calls": 0}
    seen_headers: list = []

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        payload = json.loads(self.rfile.read(length) or b"{}")
        type(self).seen_headers.append(dict(self.headers))

        if self.path == "/embed":
            texts = payload["texts"]
            body = {"embeddings": [[float(len(t)), 1.0] for t in texts]}
            self._reply(200, body)
        elif self.path == "/nli":
            self._reply(200, {"entailment": 0.2, "contradiction": 0.1, "neutral": 0.7})
        elif self.path == "/complete":
            self._reply(200, {"text": "Claim: scripted claim."})
        elif self.path == "/flaky":
            self.state["flaky_calls"] += 1
            if self.state["flaky_calls"] < 3:
                self._reply(500, {"error": "try again"})
            else:
                self._reply(200, {"ok": True, "attempt": self.state["flaky_calls"]})
        elif self.path == "/notjson":
            self.send_response(200)
            self.send_header("Content-Type", "text/plain")
            self.end_headers()
            self.wfile.write(b"plain text, not json")
        elif self.path == "/slow":
            time.sleep(1.0)
            self._reply(200, {"ok": True})
        else:
            self._reply(404, {"error": "unknown path"})

    def _reply(self, status, body):
        raw = json.dumps(body).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(raw)))
        self.end_headers()
        self.wfile.write(raw)

    def log_message(self, *args):
        pass


@pytest.fixture
def backend_server():
    handler = type(
        "Handler", (_ScriptedHandler,), {"state": {"flaky_calls": 0}, "seen_headers": []}
    )
    server = socketserver.ThreadingTCPServer(("127.0.0.1", 0), handler)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        yield base, handler
    finally:
        server.shutdown()
        server.server_close()


def test_http_call_ok(backend_server):
    base, _ = backend_server
    body = http_backend_call(f"{base}/nli", {"premise": "a", "hypothesis": "b"})
    assert body["neutral"] == 0.7


def test_http_call_retries_5xx_then_succeeds(backend_server):
    base, handler = backend_server
    body = http_backend_call(f"{base}/flaky", {}, max_retries=3, backoff=0.01)
    assert body["ok"] is True
    assert handler.state["flaky_calls"] == 3


def test_http_call_4xx_not_retried(backend_server):
    base, handler = backend_server
    before = len(handler.seen_headers)
    with pytest.raises(BackendHTTPError) as exc:
        http_backend_call(f"{base}/nowhere", {}, max_retries=3, backoff=0.01)
    assert exc.value.status == 404
    assert len(handler.seen_headers) == before + 1


def test_http_call_non_json_is_protocol_error(backend_server):
    base, _ = backend_server
    with pytest.raises(BackendProtocolError):
        http_backend_call(f"{base}/notjson", {})


def test_http_call_timeout(backend_server):
    base, _ = backend_server
    t0 = time.perf_counter()
    with pytest.raises(BackendTimeout):
        http_backend_call(f"{base}/slow", {}, timeout=0.2, max_retries=1, backoff=0.01)
    assert time.perf_counter() - t0 < 5


def test_api_key_sent_but_never_logged(backend_server, caplog, monkeypatch):
    base, handler = backend_server
    monkeypatch.setenv("TEST_BACKEND_KEY", "sekrit-token-123")
    with caplog.at_level(logging.DEBUG):
        http_backend_call(f"{base}/nli", {"x": 1}, api_key_env="TEST_BACKEND_KEY")
    assert handler.seen_headers[-1].get("Authorization") == "Bearer sekrit-token-123"
    assert "sekrit-token-123" not in caplog.text


def test_http_embedding_backend(backend_server):
    base, _ = backend_server
    backend = HttpEmbeddingBackend(f"{base}/embed", dimension=2)
    out = backend.embed(["ab", "abcd"])
    assert out.shape == (2, 2)
    assert out[0].tolist() == [2.0, 1.0]


def test_http_embedding_dimension_mismatch(backend_server):
    base, _ = backend_server
    backend = HttpEmbeddingBackend(f"{base}/embed", dimension=5)
    with pytest.raises(BackendProtocolError):
        backend.embed(["ab"])


def test_http_nli_backend(backend_server):
    base, _ = backend_server
    probs = HttpNliBackend(f"{base}/nli").classify("a", "b")
    assert probs == {"entailment": 0.2, "contradiction": 0.1, "neutral": 0.7}


def test_http_completion_backend(backend_server):
    base, _ = backend_server
    text = HttpCompletionBackend(f"{base}/complete").complete("prompt")
    assert text == "Claim: scripted claim."


def test_backend_config_block_builds_stubs():
    from claimlink.config import (
        BackendConfig,
        build_completion_backend,
        build_embedding_backend,
        build_nli_backend,
    )

    cfg = BackendConfig()
    assert isinstance(build_embedding_backend(cfg), HashEmbeddingBackend)
    assert isinstance(build_completion_backend(cfg), EchoCompletionBackend)
    assert build_nli_backend(cfg).classify("a", "a")["entailment"] == 1.0
