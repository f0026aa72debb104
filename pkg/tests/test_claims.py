import logging

from claimlink.backends import (
    EchoCompletionBackend,
    FailingBackend,
    ScriptedCompletionBackend,
    sentence_from_prompt,
)
from claimlink.claims import (
    MAX_CLAIM_CHARS,
    build_prompt,
    claim_prompt_template,
    extract_claims,
    extract_cluster_claims,
    parse_claim_list,
)
from claimlink.corpus import Sentence, fetch_cluster

HAMILTON = (
    "Lewis Hamilton and Mercedes have once again confirmed themselves as "
    "drivers and constructors world champions."
)
HAMILTON_COMPLETION = (
    "Claim: Mercedes confirmed themselves as constructors world champions.\n"
    "Claim: Lewis Hamilton confirmed themselves as drivers world champions.\n"
)

STATIONS = (
    "The 3rd and 4th stations all announced that they would be postponed, "
    "and the Monaco station was subsequently cancelled."
)
STATIONS_COMPLETION = (
    "Claim: Monaco station was cancelled.\n"
    "Claim: 4th stations announced they would be postponed.\n"
    "Claim: The 3rd stations announced they would be postponed.\n"
    "Claim: The 4th stations postponed.\n"
    "Claim: The 3rd stations postponed.\n"
)


def _sentence(text, index=0):
    return Sentence(sentence_index=index, span_start=0, span_end=len(text), text=text)


# --- prompt handling ---------------------------------------------------------


def test_prompt_template_has_single_open_slot():
    template = claim_prompt_template()
    assert template.count("<INSERT SENTENCE HERE>") == 1
    # the few-shot exemplars stay verbatim
    assert template.count("Sentence:") == 4
    assert template.count("Claim:") == 10


def test_build_prompt_fills_final_slot():
    prompt = build_prompt(HAMILTON)
    assert "<INSERT SENTENCE HERE>" not in prompt
    assert prompt.rstrip().endswith(f'Sentence: "{HAMILTON}"')


def test_sentence_recovered_from_prompt():
    assert sentence_from_prompt(build_prompt(HAMILTON)) == HAMILTON


# --- parse_claim_list --------------------------------------------------------


def test_parse_basic():
    assert parse_claim_list("Claim: A.\nClaim: B.") == ["A.", "B."]


def test_parse_dedups_case_insensitively_and_skips_noise():
    assert parse_claim_list("Claim: A.\nnoise\nClaim: a.\nClaim: A.") == ["A."]


def test_parse_empty():
    assert parse_claim_list("") == []


def test_parse_idempotent_on_serialized_output():
    claims = parse_claim_list(STATIONS_COMPLETION)
    reserialized = "\n".join(f"Claim: {c}" for c in claims)
    assert parse_claim_list(reserialized) == claims


# --- extract_claims ----------------------------------------------------------


def test_exemplar_two_claims():
    backend = ScriptedCompletionBackend({HAMILTON: HAMILTON_COMPLETION})
    claims = extract_claims(_sentence(HAMILTON), backend, article_id="a000")
    assert [c.text for c in claims] == [
        "Mercedes confirmed themselves as constructors world champions.",
        "Lewis Hamilton confirmed themselves as drivers world champions.",
    ]
    assert all(c.extraction_method == "llm" for c in claims)
    assert [c.claim_id for c in claims] == ["a000-s0000-k00", "a000-s0000-k01"]


def test_exemplar_five_claims():
    backend = ScriptedCompletionBackend({STATIONS: STATIONS_COMPLETION})
    claims = extract_claims(_sentence(STATIONS, index=3), backend, article_id="a001")
    assert [c.text for c in claims] == [
        "Monaco station was cancelled.",
        "4th stations announced they would be postponed.",
        "The 3rd stations announced they would be postponed.",
        "The 4th stations postponed.",
        "The 3rd stations postponed.",
    ]
    assert all(c.sentence_index == 3 for c in claims)


def test_echo_backend_yields_one_passthrough_claim():
    sentence = _sentence("The council approved the budget.")
    claims = extract_claims(sentence, EchoCompletionBackend(), article_id="a000")
    assert len(claims) == 1
    assert claims[0].text == sentence.text
    assert claims[0].extraction_method == "passthrough"


def test_backend_failure_falls_back_to_passthrough(caplog):
    sentence = _sentence("The council approved the budget.")
    with caplog.at_level(logging.WARNING):
        claims = extract_claims(sentence, FailingBackend(), article_id="a000")
    assert len(claims) == 1
    assert claims[0].extraction_method == "passthrough"
    assert any("passthrough" in r.message for r in caplog.records)


def test_overlong_claim_truncated_at_word_boundary():
    long_text = " ".join(["word"] * 200)
    backend = ScriptedCompletionBackend({"Short.": f"Claim: {long_text}\n"})
    claims = extract_claims(_sentence("Short."), backend, article_id="a000")
    assert len(claims[0].text) <= MAX_CLAIM_CHARS
    assert not claims[0].text.endswith(" ")
    # nothing but whole words survives the cut
    assert set(claims[0].text.split()) == {"word"}


# --- cluster-level extraction ------------------------------------------------


def test_cluster_claim_count_matches_sentence_count(story_manifest):
    cluster, _ = fetch_cluster(story_manifest)
    claims = extract_cluster_claims(cluster, EchoCompletionBackend())
    n_sentences = sum(len(a.sentences) for a in cluster.articles)
    assert len(claims) == n_sentences
    assert all(c.extraction_method == "passthrough" for c in claims)


def test_cluster_claims_map_to_existing_sentences(story_manifest):
    cluster, _ = fetch_cluster(story_manifest)
    claims = extract_cluster_claims(cluster, EchoCompletionBackend())
    articles = {a.article_id: a for a in cluster.articles}
    for claim in claims:
        article = articles[claim.article_id]
        sentence = article.sentences[claim.sentence_index]
        assert sentence.text == claim.text  # passthrough equals its sentence


def test_parallel_extraction_order_deterministic(story_manifest):
    cluster, _ = fetch_cluster(story_manifest)
    serial = extract_cluster_claims(cluster, EchoCompletionBackend(), parallelism=1)
    parallel = extract_cluster_claims(cluster, EchoCompletionBackend(), parallelism=8)
    assert serial == parallel


def test_claim_ids_unique_within_cluster(story_manifest):
    cluster, _ = fetch_cluster(story_manifest)
    claims = extract_cluster_claims(cluster, EchoCompletionBackend())
    ids = [c.claim_id for c in claims]
    assert len(set(ids)) == len(ids)
