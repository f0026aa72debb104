"""Article body extraction from HTML via a tag/text-density heuristic."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

from .errors import EmptyDocumentError

# containers whose entire subtree is boilerplate
_SKIP_TAGS = {
    "script",
    "style",
    "noscript",
    "template",
    "nav",
    "header",
    "footer",
    "aside",
    "form",
    "iframe",
    "svg",
    "button",
    "select",
    "option",
    "menu",
    "figure",
    "figcaption",
}

# elements treated as text blocks of their own
_BLOCK_TAGS = {
    "p",
    "h1",
    "h2",
    "h3",
    "h4",
    "li",
    "blockquote",
    "pre",
    "td",
    "div",
    "article",
    "section",
    "main",
    "body",
}

_VOID_TAGS = {"br", "hr", "img", "meta", "link", "input", "source", "wbr"}

_TAG_PROBE_RE = re.compile(
    r"<\s*(!doctype|html|head|body|div|p|br|span|a|meta|title|article|section|h[1-6])[\s>/]",
    re.IGNORECASE,
)

_MIN_PARAGRAPH_CHARS = 25
_MIN_FALLBACK_CHARS = 80
_MAX_LINK_DENSITY = 0.5
_MAX_FALLBACK_LINK_DENSITY = 0.3


@dataclass
class _Block:
    tag: str
    parts: list[str] = field(default_factory=list)
    link_chars: int = 0

    def text(self) -> str:
        return re.sub(r"\s+", " ", "".join(self.parts)).strip()


class _BlockCollector(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.blocks: list[_Block] = []
        self.title_parts: list[str] = []
        self.h1: str | None = None
        self._stack: list[_Block] = []
        self._skip_stack: list[str] = []
        self._in_title = False
        self._anchor_depth = 0

    def handle_starttag(self, tag, attrs):
        if self._skip_stack:
            if tag in _SKIP_TAGS:
                self._skip_stack.append(tag)
            return
        if tag in _SKIP_TAGS:
            self._skip_stack.append(tag)
            return
        if tag in _VOID_TAGS:
            if tag == "br" and self._stack:
                self._stack[-1].parts.append(" ")
            return
        if tag == "title":
            self._in_title = True
            return
        if tag == "a":
            self._anchor_depth += 1
            return
        if tag in _BLOCK_TAGS:
            self._stack.append(_Block(tag=tag))

    def handle_endtag(self, tag):
        if self._skip_stack:
            if tag == self._skip_stack[-1]:
                self._skip_stack.pop()
            return
        if tag in _VOID_TAGS:
            return
        if tag == "title":
            self._in_title = False
            return
        if tag == "a":
            if self._anchor_depth:
                self._anchor_depth -= 1
            return
        if tag in _BLOCK_TAGS:
            # close the innermost matching open block
            for i in range(len(self._stack) - 1, -1, -1):
                if self._stack[i].tag == tag:
                    block = self._stack.pop(i)
                    self._finish(block)
                    break

    def handle_data(self, data):
        if self._skip_stack:
            return
        if self._in_title:
            self.title_parts.append(data)
            return
        if not self._stack:
            return
        block = self._stack[-1]
        block.parts.append(data)
        if self._anchor_depth:
            block.link_chars += len(data.strip())

    def close(self):
        super().close()
        while self._stack:
            self._finish(self._stack.pop())

    def _finish(self, block: _Block):
        text = block.text()
        if not text:
            return
        if block.tag == "h1" and self.h1 is None:
            self.h1 = text
            return
        self.blocks.append(block)


def _link_density(block: _Block) -> float:
    text = block.text()
    if not text:
        return 1.0
    return block.link_chars / len(text)


def extract_body(html: str) -> tuple[str, str]:
    """Extract (title, body) from an HTML document.

    Boilerplate containers are dropped wholesale; remaining text blocks are
    kept if they are long enough and not link-dominated. Paragraphs are
    joined by blank lines. Plain-text input (no markup) passes through
    unchanged with an empty title.

    Raises EmptyDocumentError when nothing extractable remains.
    """
    if not _TAG_PROBE_RE.search(html):
        if not html.strip():
            raise EmptyDocumentError("no extractable paragraph text")
        return "", html

    collector = _BlockCollector()
    collector.feed(html)
    collector.close()

    paragraphs = [
        b.text()
        for b in collector.blocks
        if b.tag in ("p", "blockquote", "pre")
        and len(b.text()) >= _MIN_PARAGRAPH_CHARS
        and _link_density(b) <= _MAX_LINK_DENSITY
    ]
    if not paragraphs:
        # pages that put copy straight into generic containers
        paragraphs = [
            b.text()
            for b in collector.blocks
            if b.tag in ("div", "section", "article", "td", "main", "body")
            and len(b.text()) >= _MIN_FALLBACK_CHARS
            and _link_density(b) <= _MAX_FALLBACK_LINK_DENSITY
        ]
    if not paragraphs:
        raise EmptyDocumentError("no extractable paragraph text")

    title = collector.h1 or re.sub(r"\s+", " ", "".join(collector.title_parts)).strip()
    return title, "\n\n".join(paragraphs)
