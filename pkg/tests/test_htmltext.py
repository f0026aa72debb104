import pytest

from claimlink.errors import EmptyDocumentError
from claimlink.htmltext import extract_body

NAV_FIXTURE = """<!DOCTYPE html>
<html><head><title>Site | Story headline</title></head>
<body>
<nav><a href="/">Home</a> <a href="/news">News</a> <a href="/sports">Sports</a></nav>
<article>
<h1>Story headline</h1>
<p>First paragraph with enough text to keep around.</p>
<p>Second paragraph also long enough to be kept here.</p>
<p>Third paragraph keeps the body growing nicely along.</p>
<p>Fourth paragraph describes further developments today.</p>
<p>Fifth paragraph wraps the report up with a conclusion.</p>
</article>
<footer><p>Contact us | Terms of service | Privacy policy</p></footer>
</body></html>"""


def test_single_paragraph():
    title, body = extract_body(
        "<html><body><p>It rained hard. Streets flooded fast. Crews responded.</p></body></html>"
    )
    assert body == "It rained hard. Streets flooded fast. Crews responded."


def test_nav_and_footer_removed():
    title, body = extract_body(NAV_FIXTURE)
    paragraphs = body.split("\n\n")
    assert len(paragraphs) == 5
    assert paragraphs[0] == "First paragraph with enough text to keep around."
    assert paragraphs[4] == "Fifth paragraph wraps the report up with a conclusion."
    assert "Home" not in body
    assert "Terms of service" not in body
    assert title == "Story headline"


def test_plain_text_passthrough():
    raw = "no markup at all here,\njust plain text lines"
    title, body = extract_body(raw)
    assert title == ""
    assert body == raw


def test_empty_document_raises():
    with pytest.raises(EmptyDocumentError):
        extract_body("<html><body><nav><a href='/'>Only nav</a></nav></body></html>")
    with pytest.raises(EmptyDocumentError):
        extract_body("   ")


def test_title_from_title_tag_when_no_h1():
    title, body = extract_body(
        "<html><head><title>Tag title</title></head><body>"
        "<p>Long enough paragraph for the extraction heuristic.</p></body></html>"
    )
    assert title == "Tag title"


def test_link_dense_paragraph_dropped():
    html = (
        "<html><body>"
        "<p><a href='/a'>one link</a> <a href='/b'>two link</a> <a href='/c'>three link</a></p>"
        "<p>A normal paragraph with plenty of real sentence text.</p>"
        "</body></html>"
    )
    _, body = extract_body(html)
    assert body == "A normal paragraph with plenty of real sentence text."


def test_fallback_to_div_blocks():
    html = (
        "<html><body><div id='story'>"
        "Copy placed straight into a div, long enough to pass the fallback "
        "length cutoff, which needs at least eighty characters of text."
        "</div></body></html>"
    )
    _, body = extract_body(html)
    assert body.startswith("Copy placed straight into a div")


def test_entities_decoded():
    _, body = extract_body(
        "<html><body><p>Ports &amp; bridges reopened after the storm passed.</p></body></html>"
    )
    assert body == "Ports & bridges reopened after the storm passed."


def test_script_and_style_dropped():
    html = (
        "<html><head><style>p{color:red}</style><script>var x=1;</script></head>"
        "<body><p>Visible paragraph content that should survive extraction.</p></body></html>"
    )
    _, body = extract_body(html)
    assert "color" not in body and "var x" not in body
