"""HTML repair and canonical serialization.

Real-world pages are full of unclosed tags, stray close tags and bare
attributes.  Everything downstream (schema inference, token distances,
line diffs) assumes a well-formed tree, so all markup enters the
pipeline through ``to_xhtml``, which parses with error recovery and
yields a normalized, deterministic element tree.  The only promises the
repair makes are well-formedness, determinism and idempotence: feeding
a repaired tree's serialization back through the parser reproduces the
same tree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from html.parser import HTMLParser

logger = logging.getLogger(__name__)

# HTML5 void elements: never pushed on the open stack.
VOID_ELEMENTS = frozenset({
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
})

_P_CLOSERS = frozenset({
    "address", "article", "aside", "blockquote", "div", "dl", "fieldset",
    "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr",
    "main", "nav", "ol", "p", "pre", "section", "table", "ul",
})

# Start tags that implicitly close the element currently open (a small
# subset of the HTML5 implied-end-tag rules; enough to keep table rows
# and list items siblings instead of nesting when close tags are
# missing).  Keyed by the open element, valued by the incoming tags
# that close it.
IMPLIED_END = {
    "p": _P_CLOSERS,
    "li": frozenset({"li"}),
    "dt": frozenset({"dt", "dd"}),
    "dd": frozenset({"dt", "dd"}),
    "tr": frozenset({"tr"}),
    "td": frozenset({"td", "th", "tr"}),
    "th": frozenset({"td", "th", "tr"}),
    "thead": frozenset({"tbody", "tfoot"}),
    "tbody": frozenset({"tbody", "tfoot"}),
    "option": frozenset({"option", "optgroup"}),
}

_RAW_TEXT_TAGS = frozenset({"script", "style"})


class EmptyDocumentError(ValueError):
    """No element structure could be recovered from the input."""


@dataclass
class Text:
    content: str


@dataclass
class Element:
    name: str
    attrs: list[tuple[str, str]] = field(default_factory=list)
    children: list[Element | Text] = field(default_factory=list)
    self_closing: bool = False


@dataclass
class Document:
    root: Element


@dataclass
class LineText:
    """One tag (or text run) per line, as produced by ``pretty_print``."""

    lines: list[str]

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + "\n" if self.lines else ""


class _TreeBuilder(HTMLParser):
    """Tolerant tree construction on top of the stdlib tokenizer."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.top: list[Element | Text] = []
        self.stack: list[Element] = []

    def _append(self, node):
        target = self.stack[-1].children if self.stack else self.top
        if isinstance(node, Text) and target and isinstance(target[-1], Text):
            # adjacent runs (e.g. split around a dropped comment) merge
            target[-1].content = target[-1].content + " " + node.content
        else:
            target.append(node)

    def _close_implied(self, tag):
        while self.stack and tag in IMPLIED_END.get(self.stack[-1].name, ()):
            self.stack.pop()

    @staticmethod
    def _clean_attrs(attrs):
        seen = set()
        cleaned = []
        for name, value in attrs:
            if name in seen:  # HTML5 keeps the first duplicate
                continue
            seen.add(name)
            cleaned.append((name, value if value is not None else ""))
        return cleaned

    def handle_starttag(self, tag, attrs):
        self._close_implied(tag)
        element = Element(tag, self._clean_attrs(attrs))
        if tag in VOID_ELEMENTS:
            element.self_closing = True
            self._append(element)
        else:
            self._append(element)
            self.stack.append(element)

    def handle_startendtag(self, tag, attrs):
        self._close_implied(tag)
        self._append(Element(tag, self._clean_attrs(attrs), self_closing=True))

    def handle_endtag(self, tag):
        if tag in VOID_ELEMENTS:
            return
        if tag in [e.name for e in self.stack]:
            while self.stack and self.stack.pop().name != tag:
                pass
        # else: stray close tag, dropped

    def handle_data(self, data):
        if self.stack and self.stack[-1].name in _RAW_TEXT_TAGS:
            return  # script/style bodies are not structure
        collapsed = " ".join(data.split())
        if collapsed:
            self._append(Text(collapsed))


def parse_html(text: str) -> Document:
    """Parse possibly faulty markup into a well-formed Document."""
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    elements = [n for n in builder.top if isinstance(n, Element)]
    if not elements:
        raise EmptyDocumentError("no recognizable markup")
    if len(elements) == 1 and len(builder.top) == 1:
        return Document(elements[0])
    # several top-level nodes: give the tree a single root
    return Document(Element("html", [], list(builder.top)))


def to_xhtml(raw) -> Document:
    """Repair one raw page (``RawPage`` or plain string) into a Document."""
    text = raw if isinstance(raw, str) else raw.text
    return parse_html(text)


def decode_markup(data: bytes) -> str:
    """UTF-8 first, Latin-1 as the lossless fallback for legacy corpora."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        return data.decode("latin-1")


def _escape(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return _escape(value).replace('"', "&quot;")


def _open_tag(element: Element, self_close: bool = False) -> str:
    parts = [element.name]
    for name, value in element.attrs:
        parts.append(f'{name}="{_escape_attr(value)}"')
    return "<" + " ".join(parts) + ("/>" if self_close else ">")


def pretty_print(doc: Document) -> LineText:
    """Serialize with one tag per line, children indented two spaces.

    Elements parsed from a self-closing (or void) source tag stay on a
    single line; everything else gets an open and a close line, even
    when childless.
    """
    lines: list[str] = []

    def walk(node, depth):
        pad = "  " * depth
        if isinstance(node, Text):
            lines.append(pad + _escape(node.content))
            return
        if node.self_closing and not node.children:
            lines.append(pad + _open_tag(node, self_close=True))
            return
        lines.append(pad + _open_tag(node))
        for child in node.children:
            walk(child, depth + 1)
        lines.append(pad + f"</{node.name}>")

    walk(doc.root, 0)
    return LineText(lines)


def serialize(doc: Document) -> str:
    """Round-trippable text form of a Document (the pretty-print)."""
    return pretty_print(doc).text


def remove_textual_content(doc: Document) -> Document:
    """Drop every text node; element structure and attributes stay put."""

    def strip(element: Element) -> Element:
        children = [strip(c) for c in element.children if isinstance(c, Element)]
        return Element(element.name, list(element.attrs), children, element.self_closing)

    return Document(strip(doc.root))


def stripped_lines(doc: Document) -> LineText:
    """Text-free pretty-print, the input form the line diff works on."""
    return pretty_print(remove_textual_content(doc))
